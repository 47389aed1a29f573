#include <pybind11/pybind11.h>
PYBIND11_MODULE(_planext, m) { m.doc() = "stub"; }

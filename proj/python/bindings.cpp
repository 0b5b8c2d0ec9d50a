#include <pybind11/pybind11.h>

PYBIND11_MODULE(_qcluster, m) {
    m.doc() = "cluster-state generation toolkit (placeholder)";
}

// pybind11 bindings: tensors cross the boundary as Fortran-ordered
// (n1, n2, n3) float64 arrays, matching the native buffer layout.
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstring>

#include "projprod/decompositions.hpp"
#include "projprod/errors.hpp"
#include "projprod/io.hpp"
#include "projprod/metrics.hpp"
#include "projprod/star_products.hpp"
#include "projprod/tensor.hpp"
#include "projprod/transforms.hpp"

namespace py = pybind11;
using namespace projprod;

namespace {

using FArray = py::array_t<double, py::array::f_style | py::array::forcecast>;

Tensor3 tensor_from(const FArray& arr) {
    if (arr.ndim() != 3)
        throw shape_error("expected a 3-d array, got ndim=" +
                          std::to_string(arr.ndim()));
    const Index n1 = static_cast<Index>(arr.shape(0));
    const Index n2 = static_cast<Index>(arr.shape(1));
    const Index n3 = static_cast<Index>(arr.shape(2));
    Tensor3 t(n1, n2, n3);
    std::memcpy(t.data(), arr.data(), sizeof(double) *
                                          static_cast<std::size_t>(t.size()));
    return t;
}

py::array tensor_to(const Tensor3& t) {
    const auto e = static_cast<py::ssize_t>(sizeof(double));
    py::array_t<double> arr(
        {static_cast<py::ssize_t>(t.n1()), static_cast<py::ssize_t>(t.n2()),
         static_cast<py::ssize_t>(t.n3())},
        {e, e * t.n1(), e * t.n1() * t.n2()});
    std::memcpy(arr.mutable_data(), t.data(),
                sizeof(double) * static_cast<std::size_t>(t.size()));
    return arr;
}

using FMat = py::array_t<double, py::array::f_style | py::array::forcecast>;

Matrix matrix_from(const FMat& arr) {
    if (arr.ndim() != 2)
        throw shape_error("expected a 2-d array, got ndim=" +
                          std::to_string(arr.ndim()));
    return Eigen::Map<const Matrix>(arr.data(),
                                    static_cast<Index>(arr.shape(0)),
                                    static_cast<Index>(arr.shape(1)));
}

py::array matrix_to(const Matrix& m) {
    const auto e = static_cast<py::ssize_t>(sizeof(double));
    py::array_t<double> arr(
        {static_cast<py::ssize_t>(m.rows()), static_cast<py::ssize_t>(m.cols())},
        {e, e * m.rows()});
    Eigen::Map<Matrix>(arr.mutable_data(), m.rows(), m.cols()) = m;
    return arr;
}

py::array stack_to(const std::vector<Matrix>& slices) {
    Tensor3 t = Tensor3::from_slices(slices);
    return tensor_to(t);
}

Transform build_transform(const std::string& name, Index n3, Index p,
                          std::uint64_t seed, py::object data) {
    if (name == "identity") return identity_transform(n3, p);
    if (name == "random") return random_orthogonal_transform(n3, p, seed);
    if (name == "dct") return dct_transform(n3, p);
    if (name == "haar") return haar_transform(n3, p);
    if (name == "data") {
        if (data.is_none())
            throw argument_error("transform 'data' needs the data= tensor");
        return data_dependent_transform(tensor_from(data.cast<FArray>()), p);
    }
    throw argument_error("unknown transform '" + name +
                         "' (identity|random|dct|haar|data)");
}

}  // namespace

PYBIND11_MODULE(_projprod, m) {
    m.doc() = "projected tensor-tensor products and truncated decompositions";

    py::class_<Transform>(m, "Transform")
        .def(py::init([](const std::string& name, Index n3, Index p,
                         std::uint64_t seed, py::object data) {
                 return build_transform(name, n3, p, seed, data);
             }),
             py::arg("kind"), py::arg("n3"), py::arg("p"),
             py::arg("seed") = 0, py::arg("data") = py::none())
        .def_static(
            "custom",
            [](const FMat& q, double scale) {
                return custom_transform(matrix_from(q), scale);
            },
            py::arg("q"), py::arg("scale") = 1.0)
        .def_property_readonly("q", [](const Transform& t) { return matrix_to(t.Q); })
        .def_property_readonly("n3", &Transform::n3)
        .def_property_readonly("p", &Transform::p)
        .def_property_readonly("scale", [](const Transform& t) { return t.scale; })
        .def_property_readonly("kind", [](const Transform& t) {
            return std::string(transform_kind_name(t.kind));
        })
        .def_property_readonly("complement", [](const Transform& t) {
            return matrix_to(complement_basis(t));
        });

    py::class_<TsvdqFactors>(m, "TsvdqFactors")
        .def_property_readonly("u", [](const TsvdqFactors& f) { return stack_to(f.Uhat); })
        .def_property_readonly("v", [](const TsvdqFactors& f) { return stack_to(f.Vhat); })
        .def_property_readonly("s",
                               [](const TsvdqFactors& f) {
                                   Matrix s(f.shat.empty() ? 0 : f.shat[0].size(),
                                            static_cast<Index>(f.shat.size()));
                                   for (std::size_t j = 0; j < f.shat.size(); ++j)
                                       s.col(static_cast<Index>(j)) = f.shat[j];
                                   return matrix_to(s);
                               })
        .def_property_readonly("k", [](const TsvdqFactors& f) { return f.k; })
        .def_property_readonly("transform",
                               [](const TsvdqFactors& f) { return f.transform; });

    py::class_<TsvdqIIFactors>(m, "TsvdqIIFactors")
        .def_property_readonly("multirank",
                               [](const TsvdqIIFactors& f) { return f.multirank; })
        .def_property_readonly("implicit_rank",
                               [](const TsvdqIIFactors& f) {
                                   return f.implicit_rank();
                               })
        .def_property_readonly("gamma",
                               [](const TsvdqIIFactors& f) { return f.gamma; })
        .def_property_readonly("transform",
                               [](const TsvdqIIFactors& f) { return f.transform; });

    py::class_<HosvdFactors>(m, "HosvdFactors")
        .def_property_readonly("core",
                               [](const HosvdFactors& f) { return tensor_to(f.core); })
        .def_property_readonly("u1", [](const HosvdFactors& f) { return matrix_to(f.U1); })
        .def_property_readonly("u2", [](const HosvdFactors& f) { return matrix_to(f.U2); })
        .def_property_readonly("u3", [](const HosvdFactors& f) { return matrix_to(f.U3); });

    m.def(
        "star_m",
        [](const FArray& a, const FArray& b, const FMat& mm) {
            return tensor_to(
                star_m_product(tensor_from(a), tensor_from(b), matrix_from(mm)));
        },
        py::arg("a"), py::arg("b"), py::arg("m"));
    m.def(
        "star_q",
        [](const FArray& a, const FArray& b, const Transform& t) {
            return tensor_to(
                star_q_product(tensor_from(a), tensor_from(b), StarContext(t)));
        },
        py::arg("a"), py::arg("b"), py::arg("transform"));
    m.def(
        "star_q_transpose",
        [](const FArray& a, const Transform& t) {
            return tensor_to(star_q_transpose(tensor_from(a), StarContext(t)));
        },
        py::arg("a"), py::arg("transform"));
    m.def(
        "star_q_identity",
        [](Index mdim, const Transform& t) {
            return tensor_to(star_q_identity(mdim, StarContext(t)));
        },
        py::arg("m"), py::arg("transform"));
    m.def(
        "star_q_rank",
        [](const FArray& a, const Transform& t) {
            return star_q_rank(tensor_from(a), t);
        },
        py::arg("a"), py::arg("transform"));

    m.def(
        "tsvdq",
        [](const FArray& a, const Transform& t, Index k) {
            return tsvdq(tensor_from(a), t, k);
        },
        py::arg("a"), py::arg("transform"), py::arg("k"));
    m.def("tsvdq_reconstruct",
          [](const TsvdqFactors& f) { return tensor_to(tsvdq_reconstruct(f)); });
    m.def(
        "tsvdq_error",
        [](const FArray& a, const TsvdqFactors& f) {
            ApproxError e = tsvdq_error(tensor_from(a), f);
            return py::make_tuple(e.total, e.eckart_young, e.projection);
        },
        py::arg("a"), py::arg("factors"),
        "returns (total, eckart_young, projection)");
    m.def(
        "tsvdq2",
        [](const FArray& a, const Transform& t, double gamma) {
            return tsvdq2(tensor_from(a), t, gamma);
        },
        py::arg("a"), py::arg("transform"), py::arg("gamma"));
    m.def("tsvdq2_reconstruct", [](const TsvdqIIFactors& f) {
        return tensor_to(tsvdq2_reconstruct(f));
    });
    m.def(
        "tsvdq2_error",
        [](const FArray& a, const TsvdqIIFactors& f) {
            ApproxError e = tsvdq2_error(tensor_from(a), f);
            return py::make_tuple(e.total, e.eckart_young, e.projection);
        },
        py::arg("a"), py::arg("factors"));
    m.def(
        "hosvd",
        [](const FArray& a, Index k1, Index k2, Index k3) {
            return hosvd(tensor_from(a), k1, k2, k3);
        },
        py::arg("a"), py::arg("k1"), py::arg("k2"), py::arg("k3"));
    m.def("hosvd_reconstruct", [](const HosvdFactors& f) {
        return tensor_to(hosvd_reconstruct(f));
    });
    m.def(
        "matrix_svd_error",
        [](const FArray& a, Index k) {
            return matrix_svd_baseline(tensor_from(a), k).error;
        },
        py::arg("a"), py::arg("k"));

    m.def(
        "projection_error",
        [](const FArray& a, const Transform& t) {
            return projection_error(tensor_from(a), t);
        },
        py::arg("a"), py::arg("transform"));
    m.def(
        "relative_error",
        [](const FArray& ref, const FArray& approx) {
            return relative_error(tensor_from(ref), tensor_from(approx));
        },
        py::arg("ref"), py::arg("approx"));
    m.def("frobenius_norm",
          [](const FArray& a) { return frobenius_norm(tensor_from(a)); });

    m.def(
        "gen_moving_square",
        [](Index n1, Index n2, Index n3, Index square, Index vx, Index vy,
           std::uint64_t seed) {
            return tensor_to(
                gen_moving_square({n1, n2, n3, square, vx, vy, seed}));
        },
        py::arg("n1"), py::arg("n2"), py::arg("n3"), py::arg("square") = 4,
        py::arg("vx") = 1, py::arg("vy") = 1, py::arg("seed") = 0);
    m.def(
        "gen_spectral_cube",
        [](Index n1, Index n2, Index n3, Index signatures, std::uint64_t seed) {
            return tensor_to(gen_spectral_cube({n1, n2, n3, signatures, seed}));
        },
        py::arg("n1"), py::arg("n2"), py::arg("n3"), py::arg("signatures") = 3,
        py::arg("seed") = 0);
    m.def(
        "gen_exact_rank",
        [](Index n1, Index n2, Index n3, Index rank, std::uint64_t seed,
           const Transform& t) {
            return tensor_to(gen_exact_rank({n1, n2, n3, rank, seed}, t));
        },
        py::arg("n1"), py::arg("n2"), py::arg("n3"), py::arg("rank"),
        py::arg("seed"), py::arg("transform"));

    m.def("read_pt3", [](const std::string& path) { return tensor_to(read_pt3(path)); });
    m.def("write_pt3", [](const std::string& path, const FArray& a) {
        write_pt3(path, tensor_from(a));
    });
}

// Python bindings for the main operations: classes as (rank, degree) int
// pairs, exact rationals as fractions.Fraction, Jordan types as lists of
// pairs, rich classes as canonical strings or dicts.

#include "coha/format.hpp"
#include "coha/grcoha.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace coha;

namespace {

Int to_int(const py::object& o) { return Int(py::str(o).cast<std::string>()); }

py::object from_int(const Int& v) {
    return py::module_::import("builtins").attr("int")(v.str());
}

py::object from_rat(const Rat& v) {
    auto fraction = py::module_::import("fractions").attr("Fraction");
    return fraction(from_int(num(v)), from_int(den(v)));
}

NumClass to_class(const py::object& o) {
    auto t = o.cast<py::sequence>();
    if (py::len(t) != 2) throw std::invalid_argument("a class is a (rank, degree) pair");
    return NumClass(to_int(t[0]), to_int(t[1]));
}

py::tuple from_class(const NumClass& c) {
    return py::make_tuple(from_int(c.rank), from_int(c.deg));
}

JordanType to_type(const py::object& o) {
    std::vector<NumClass> entries;
    for (auto e : o.cast<py::sequence>()) entries.push_back(to_class(py::reinterpret_borrow<py::object>(e)));
    return JordanType::make(std::move(entries));
}

py::list from_type(const JordanType& t) {
    py::list out;
    for (auto& e : t.entries()) out.append(from_class(e));
    return out;
}

py::list from_types(const std::vector<JordanType>& v) {
    py::list out;
    for (auto& t : v) out.append(from_type(t));
    return out;
}

RowClasses to_rows(const py::object& o) {
    RowClasses rows;
    for (auto e : o.cast<py::sequence>()) rows.push_back(to_class(py::reinterpret_borrow<py::object>(e)));
    return rows;
}

py::list from_series(const QSeries& s) {
    py::list out;
    for (long k = 0; k <= s.trunc(); ++k) out.append(from_rat(s.coeff(k)));
    return out;
}

py::dict from_stratum(const StratumClass& s) {
    py::dict d;
    d["type"] = from_type(s.jordan_type);
    d["vb_rank"] = from_int(s.vb_rank);
    d["dim_lambda"] = from_int(s.dim_lambda);
    d["modulo_lower"] = s.modulo_lower;
    d["payload"] = s.payload.str();
    return d;
}

} // namespace

PYBIND11_MODULE(curvecoha, m) {
    m.doc() = "exact calculator for nilpotent Higgs strata, tautological classes and "
              "stack series on a smooth projective curve";

    // numerical K-theory
    m.def("is_positive", [](py::object a) { return is_positive(to_class(a)); });
    m.def("euler_coh", [](long long g, py::object a, py::object b) {
        return from_int(euler_coh(to_class(a), to_class(b), CurveModel(g)));
    });
    m.def("euler_higgs", [](long long g, py::object a, py::object b) {
        return from_int(euler_higgs(to_class(a), to_class(b), CurveModel(g)));
    });
    m.def("slope", [](py::object a) -> py::object {
        Slope s = slope_of(to_class(a));
        if (s.is_infinite()) return py::float_(std::numeric_limits<double>::infinity());
        return from_rat(s.value());
    });
    m.def("twist", [](py::object a, py::object n) {
        return from_class(twist(to_class(a), to_int(n)));
    });
    m.def("leq_standard", [](py::object b, py::object a) {
        return leq_standard(to_class(b), to_class(a));
    });
    m.def("dim_coh", [](long long g, py::object a) {
        return from_int(dim_coh_stack(to_class(a), CurveModel(g)));
    });
    m.def("dim_higgs", [](long long g, py::object a) {
        return from_int(dim_higgs_stack(to_class(a), CurveModel(g)));
    });
    m.def("dim_ext", [](long long g, py::object a, py::object b) {
        return from_int(dim_ext_stack(to_class(a), to_class(b), CurveModel(g)));
    });
    m.def("rank_q_fibration", [](long long g, py::object lL, py::object a, py::object b) {
        return from_int(affine_fibration_rank(to_int(lL), to_class(a), to_class(b), CurveModel(g)));
    });

    // Jordan types
    m.def("total_class", [](long long g, py::object t) {
        return from_class(total_class(to_type(t), CurveModel(g)));
    });
    m.def("row_classes", [](long long g, py::object t) {
        py::list out;
        for (auto& r : row_classes(to_type(t), CurveModel(g))) out.append(from_class(r));
        return out;
    });
    m.def("rows_to_type", [](long long g, py::object rows) -> py::object {
        RowsDecode d = rows_to_type(to_rows(rows), CurveModel(g));
        if (!d.ok()) return py::none();
        return from_type(*d.type);
    });
    m.def("kernel_class", [](long long g, py::object t, long long k) {
        return from_class(kernel_class(to_type(t), k, CurveModel(g)));
    });
    m.def("preceq", [](long long g, py::object b, py::object a) {
        return preceq(to_type(b), to_type(a), CurveModel(g));
    });
    m.def("enumerate_rank0", [](long long d) { return from_types(enumerate_rank0(d)); });
    m.def("enumerate_bounded", [](long long g, py::object a, long long max_len, long long window) {
        return from_types(enumerate_bounded(to_class(a), max_len, window, CurveModel(g)));
    });
    m.def("downset", [](long long g, py::object t, long long window) {
        return from_types(downset(to_type(t), window, CurveModel(g)));
    });
    m.def("render_young", [](long long g, py::object t, const std::string& fmt) {
        if (fmt == "tex") return render_young_tex(to_type(t), CurveModel(g));
        if (fmt == "text") return render_young_text(to_type(t), CurveModel(g));
        throw std::invalid_argument("format must be 'text' or 'tex'");
    });
    m.def("vb_stack_rank", [](long long g, py::object t) {
        return from_int(vb_stack_rank(to_type(t), CurveModel(g)));
    });
    m.def("correspondence_dim", [](long long g, py::object rows) {
        return from_int(correspondence_dim(to_rows(rows), CurveModel(g)));
    });

    // series
    m.def("series_positive_rank", [](long long g, long N) {
        return from_series(poincare_series_positive_rank(CurveModel(g), N));
    });
    m.def("series_torsion", [](long long g, long long d, long N) {
        return from_series(poincare_series_torsion(CurveModel(g), d, N));
    });
    m.def("stratum_series", [](long long g, py::object t, long N) {
        return from_series(stratum_series(to_type(t), CurveModel(g), N));
    });
    m.def("downset_series", [](long long g, py::object t, long long window, long N) {
        return from_series(downset_series(to_type(t), window, CurveModel(g), N));
    });

    // Hopf and graded classes (canonical string forms)
    m.def("hpoly", [](long long g, const std::string& text) {
        return parse_hpoly(text, g, "poly").str();
    });
    m.def("coproduct", [](long long g, const std::string& poly, py::object a1, py::object a2,
                          long N) {
        HPoly p = parse_hpoly(poly, g, "poly");
        return coproduct(p, to_class(a1), to_class(a2), CurveModel(g), N).str();
    });
    m.def("gr_product", [](long long g, py::object rows, py::object polys, long N) {
        CurveModel m(g);
        RowClasses rc = to_rows(rows);
        std::vector<GenClass> factors;
        for (std::size_t i = 0; i < rc.size(); ++i) {
            GenClass f = fundamental_class(rc[i], g);
            if (!polys.is_none()) {
                auto seq = polys.cast<py::sequence>();
                f.poly = parse_hpoly(py::str(seq[i]).cast<std::string>(), g, "poly");
            }
            factors.push_back(std::move(f));
        }
        auto lp = leading_product(factors, m, N);
        if (!lp.ok())
            throw std::invalid_argument("rows decode to no Jordan type (first failure at index " +
                                        std::to_string(lp.first_invalid) + ")");
        return from_stratum(*lp.value);
    }, py::arg("genus"), py::arg("rows"), py::arg("polys") = py::none(), py::arg("N"));
    m.def("gr_act", [](long long g, py::object t, const std::string& h, long N) {
        CurveModel m(g);
        JordanType jt = to_type(t);
        StratumClass x(jt, jt.entries(), TensorPoly::unit(slots_for_classes(jt.entries()), g),
                       vb_stack_rank(jt, m), dim_coh_stack(total_class(jt, m), m));
        return from_stratum(hmodule_act(parse_hpoly(h, g, "h"), x, m, N));
    });
    m.def("strata_sheaf_classes", [](long long g, py::object t, long N) {
        py::list out;
        for (auto& c : strata_sheaf_classes(to_type(t), CurveModel(g), N)) {
            py::dict d;
            d["class"] = from_class(c.num_class());
            d["chern"] = c.str();
            out.append(d);
        }
        return out;
    });
}

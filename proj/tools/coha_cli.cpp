// Batch command-line front end: every library operation behind one
// deterministic, machine-readable subcommand. Exit codes: 0 success,
// 2 validation error, 1 internal error.

#include "coha/format.hpp"
#include "coha/grcoha.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <functional>
#include <iostream>
#include <string>
#include <vector>

using namespace coha;
using nlohmann::json;
using nlohmann::ordered_json;

namespace {

// operation -> the one subcommand that exposes it
const std::vector<std::pair<std::string, std::string>> kOpRegistry = {
    {"ktheory.is_positive", "jordan total"},
    {"ktheory.euler_coh", "euler coh"},
    {"ktheory.euler_higgs", "euler higgs"},
    {"ktheory.slope", "slope"},
    {"ktheory.twist", "twist"},
    {"ktheory.leq_standard", "jordan preceq"},
    {"ktheory.dim_coh", "dims coh"},
    {"ktheory.dim_higgs", "dims higgs"},
    {"ktheory.dim_ext_stack", "dims ext"},
    {"ktheory.rank_q_fibration", "dims qrank"},
    {"jordan.total_class", "jordan total"},
    {"jordan.row_classes", "jordan rows"},
    {"jordan.rows_to_type", "gr product"},
    {"jordan.kernel_class", "jordan kernel"},
    {"jordan.preceq", "jordan preceq"},
    {"jordan.enumerate_rank0", "jordan enum"},
    {"jordan.enumerate_bounded", "jordan enum"},
    {"jordan.downset", "jordan downset"},
    {"jordan.render_young", "jordan diagram"},
    {"jordan.vb_stack_rank", "gr product"},
    {"jordan.dim_q_correspondence", "dims qcorr"},
    {"tautalg.hpoly_mul", "hopf coproduct"},
    {"tautalg.poincare_coh_positive_rank", "series coh"},
    {"tautalg.poincare_coh_torsion", "series torsion"},
    {"tautalg.kunneth_total_chern", "hopf verify"},
    {"tautalg.coproduct", "hopf coproduct"},
    {"tautalg.chern_to_chchar", "gr sheaves"},
    {"tautalg.twist_class", "gr sheaves"},
    {"tautalg.k_difference", "gr sheaves"},
    {"grcoha.fundamental_class", "gr product"},
    {"grcoha.leading_product", "gr product"},
    {"grcoha.strata_sheaf_classes", "gr sheaves"},
    {"grcoha.hmodule_act", "gr act"},
    {"grcoha.stratum_series", "series stratum"},
    {"grcoha.downset_series", "series downset"},
};

struct Output {
    std::string format = "text";
    ordered_json doc;

    void begin(const std::string& op) {
        doc = ordered_json::object();
        doc["op"] = op;
        doc["inputs"] = ordered_json::object();
        doc["result"] = nullptr;
        doc["bounds"] = ordered_json::object();
    }
    template <class T> void input(const std::string& k, const T& v) { doc["inputs"][k] = v; }
    template <class T> void bound(const std::string& k, const T& v) { doc["bounds"][k] = v; }

    void finish(const std::string& text) {
        if (format == "json") std::cout << doc.dump() << "\n";
        else std::cout << text << (text.empty() || text.back() == '\n' ? "" : "\n");
    }
};

json series_json(const QSeries& s) {
    json coeffs = json::array();
    for (long k = 0; k <= s.trunc(); ++k) coeffs.push_back(rat_str(s.coeff(k)));
    return json{{"coeffs", coeffs}, {"trunc", s.trunc()}};
}

json type_json(const JordanType& t) {
    json arr = json::array();
    for (auto& e : t.entries()) arr.push_back({e.rank.str(), e.deg.str()});
    return arr;
}

std::string types_text(const std::vector<JordanType>& v, const std::string& bounds) {
    std::string out = "# bounds: " + bounds + "\n";
    for (auto& t : v) out += t.str() + "\n";
    return out;
}

json types_json(const std::vector<JordanType>& v) {
    json arr = json::array();
    for (auto& t : v) arr.push_back(type_json(t));
    return arr;
}

json tensor_json(const TensorPoly& p) {
    CurveCohomology X(p.genus());
    json arr = json::array();
    for (auto& [k, c] : p.terms()) {
        json slots = json::array();
        for (auto& sk : k) {
            if (std::holds_alternative<Monomial>(sk)) {
                json mono = json::array();
                for (auto& [g, e] : std::get<Monomial>(sk).factors)
                    mono.push_back({g.i, X.name(g.pi), e});
                slots.push_back({{"free", mono}});
            } else {
                json word = json::array();
                for (auto& [v, cnt] : std::get<SymWord>(sk).elems)
                    word.push_back({X.name(v.pi), v.z, cnt});
                slots.push_back({{"sym", word}});
            }
        }
        arr.push_back({{"coeff", rat_str(c)}, {"slots", slots}});
    }
    return arr;
}

json kunneth_json(const KunnethClass& K) {
    CurveCohomology X(K.genus());
    json comps = json::object();
    for (int pi = 0; pi < X.dim(); ++pi)
        if (!K.component(pi).is_zero()) comps[X.name(pi)] = tensor_json(K.component(pi));
    return json{{"class", K.num_class().str()}, {"components", comps}};
}

std::string stratum_text(const StratumClass& s) {
    std::string out;
    out += "type: " + s.jordan_type.str() + "\n";
    out += "vb_rank: " + s.vb_rank.str() + "\n";
    out += "dim_lambda: " + s.dim_lambda.str() + "\n";
    out += "modulo_lower: true\n";
    out += "payload: " + s.payload.str() + "\n";
    return out;
}

ordered_json stratum_json(const StratumClass& s) {
    ordered_json j;
    j["type"] = type_json(s.jordan_type);
    j["vb_rank"] = s.vb_rank.str();
    j["dim_lambda"] = s.dim_lambda.str();
    j["modulo_lower"] = true;
    j["payload"] = tensor_json(s.payload);
    return j;
}

Int parse_int(const std::string& s, const std::string& arg) {
    try {
        if (s.empty()) throw std::invalid_argument("");
        return Int(s);
    } catch (const std::exception&) {
        throw std::invalid_argument(arg + ": malformed integer \"" + s + "\"");
    }
}

CurveModel model_of(long long genus) {
    if (genus < 0) throw std::invalid_argument("--genus: must be non-negative");
    return CurveModel(genus);
}

long check_trunc(long long N) {
    if (N < 0) throw std::invalid_argument("--N: truncation order must be non-negative");
    return (long)N;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact calculator for nilpotent Higgs strata, tautological classes and"
                 " stack series on a smooth projective curve"};
    app.require_subcommand(1);

    Output out;
    app.add_option("--format", out.format, "output format: text, json or tex")
        ->check(CLI::IsMember({"text", "json", "tex"}))
        ->capture_default_str();

    std::string a_s, b_s, n_s, type_s, btype_s, rows_s, poly_s, lL_s, h_s, polys_s;
    long long genus = 0, N = 0, d = 0, k = 1, max_len = 1, window = 0, rank0 = -1;
    std::string d1_s = "0", d2_s = "0";

    auto require_text = [&]() {
        if (out.format == "tex")
            throw std::invalid_argument("--format: tex is only available for jordan diagram");
    };

    // ---- euler ----
    auto* euler = app.add_subcommand("euler", "Euler forms on numerical classes");
    euler->require_subcommand(1);
    for (bool higgs : {false, true}) {
        auto* sc = euler->add_subcommand(higgs ? "higgs" : "coh",
                                         higgs ? "Higgs (symmetrized) Euler form"
                                               : "coherent-sheaf Euler form");
        sc->add_option("--genus", genus)->required();
        sc->add_option("--a", a_s)->required();
        sc->add_option("--b", b_s)->required();
        sc->callback([&, higgs]() {
            require_text();
            out.begin(higgs ? "euler.higgs" : "euler.coh");
            out.input("genus", genus);
            out.input("a", a_s);
            out.input("b", b_s);
            CurveModel m = model_of(genus);
            NumClass a = parse_num_class(a_s, "--a"), b = parse_num_class(b_s, "--b");
            Int v = higgs ? euler_higgs(a, b, m) : euler_coh(a, b, m);
            out.doc["result"] = v.str();
            out.finish(v.str());
        });
    }

    // ---- slope ----
    auto* slope_cmd = app.add_subcommand("slope", "slope d/r of a class (inf for torsion)");
    slope_cmd->add_option("--a", a_s)->required();
    slope_cmd->callback([&]() {
        require_text();
        out.begin("slope");
        out.input("a", a_s);
        Slope s = slope_of(parse_num_class(a_s, "--a"));
        out.doc["result"] = s.str();
        out.finish(s.str());
    });

    // ---- twist ----
    auto* twist_cmd = app.add_subcommand("twist", "twist a class by a line-bundle degree");
    twist_cmd->add_option("--a", a_s)->required();
    twist_cmd->add_option("--n", n_s)->required();
    twist_cmd->callback([&]() {
        require_text();
        out.begin("twist");
        out.input("a", a_s);
        out.input("n", n_s);
        NumClass t = twist(parse_num_class(a_s, "--a"), parse_int(n_s, "--n"));
        out.doc["result"] = t.str();
        out.finish(t.str());
    });

    // ---- dims ----
    auto* dims = app.add_subcommand("dims", "stack dimension bookkeeping");
    dims->require_subcommand(1);
    {
        auto* sc = dims->add_subcommand("coh", "dim of the coherent-sheaf stack");
        sc->add_option("--genus", genus)->required();
        sc->add_option("--a", a_s)->required();
        sc->callback([&]() {
            require_text();
            out.begin("dims.coh");
            out.input("genus", genus);
            out.input("a", a_s);
            Int v = dim_coh_stack(parse_num_class(a_s, "--a"), model_of(genus));
            out.doc["result"] = v.str();
            out.finish(v.str());
        });
    }
    {
        auto* sc = dims->add_subcommand("higgs", "dim of the Higgs stack");
        sc->add_option("--genus", genus)->required();
        sc->add_option("--a", a_s)->required();
        sc->callback([&]() {
            require_text();
            out.begin("dims.higgs");
            out.input("genus", genus);
            out.input("a", a_s);
            Int v = dim_higgs_stack(parse_num_class(a_s, "--a"), model_of(genus));
            out.doc["result"] = v.str();
            out.finish(v.str());
        });
    }
    {
        auto* sc = dims->add_subcommand("ext", "dim of the extension stack");
        sc->add_option("--genus", genus)->required();
        sc->add_option("--a", a_s)->required();
        sc->add_option("--b", b_s)->required();
        sc->callback([&]() {
            require_text();
            out.begin("dims.ext");
            out.input("genus", genus);
            out.input("a", a_s);
            out.input("b", b_s);
            Int v = dim_ext_stack(parse_num_class(a_s, "--a"), parse_num_class(b_s, "--b"),
                                  model_of(genus));
            out.doc["result"] = v.str();
            out.finish(v.str());
        });
    }
    {
        auto* sc = dims->add_subcommand("qrank", "rank of the local affine fibration");
        sc->add_option("--genus", genus)->required();
        sc->add_option("--lL", lL_s)->required();
        sc->add_option("--a", a_s)->required();
        sc->add_option("--b", b_s)->required();
        sc->callback([&]() {
            require_text();
            out.begin("dims.qrank");
            out.input("genus", genus);
            out.input("lL", lL_s);
            out.input("a", a_s);
            out.input("b", b_s);
            Int v = affine_fibration_rank(parse_int(lL_s, "--lL"), parse_num_class(a_s, "--a"),
                                          parse_num_class(b_s, "--b"), model_of(genus));
            out.doc["result"] = v.str();
            out.finish(v.str());
        });
    }
    {
        auto* sc = dims->add_subcommand("qcorr", "dim of the row-class correspondence");
        sc->add_option("--genus", genus)->required();
        sc->add_option("--rows", rows_s)->required();
        sc->callback([&]() {
            require_text();
            out.begin("dims.qcorr");
            out.input("genus", genus);
            out.input("rows", rows_s);
            Int v = correspondence_dim(parse_row_classes(rows_s, "--rows"), model_of(genus));
            out.doc["result"] = v.str();
            out.finish(v.str());
        });
    }

    // ---- jordan ----
    auto* jordan = app.add_subcommand("jordan", "Jordan types of the nilpotent cone");
    jordan->require_subcommand(1);
    {
        auto* sc = jordan->add_subcommand("total", "total class of a Jordan type");
        sc->add_option("--genus", genus)->required();
        sc->add_option("--type", type_s)->required();
        sc->callback([&]() {
            require_text();
            out.begin("jordan.total");
            out.input("genus", genus);
            out.input("type", type_s);
            NumClass v = total_class(parse_jordan_type(type_s, "--type"), model_of(genus));
            out.doc["result"] = v.str();
            out.finish(v.str());
        });
    }
    {
        auto* sc = jordan->add_subcommand("rows", "row classes of a Jordan type");
        sc->add_option("--genus", genus)->required();
        sc->add_option("--type", type_s)->required();
        sc->callback([&]() {
            require_text();
            out.begin("jordan.rows");
            out.input("genus", genus);
            out.input("type", type_s);
            RowClasses rows = row_classes(parse_jordan_type(type_s, "--type"), model_of(genus));
            std::string text;
            json arr = json::array();
            for (std::size_t i = 0; i < rows.size(); ++i) {
                if (i) text += ";";
                text += rows[i].str();
                arr.push_back(rows[i].str());
            }
            out.doc["result"] = arr;
            out.finish(text);
        });
    }
    {
        auto* sc = jordan->add_subcommand("kernel", "class of the k-th kernel sheaf");
        sc->add_option("--genus", genus)->required();
        sc->add_option("--type", type_s)->required();
        sc->add_option("--k", k)->required();
        sc->callback([&]() {
            require_text();
            out.begin("jordan.kernel");
            out.input("genus", genus);
            out.input("type", type_s);
            out.input("k", k);
            if (k < 1) throw std::invalid_argument("--k: must be >= 1");
            NumClass v = kernel_class(parse_jordan_type(type_s, "--type"), k, model_of(genus));
            out.doc["result"] = v.str();
            out.finish(v.str());
        });
    }
    {
        auto* sc = jordan->add_subcommand("preceq", "does --b precede --a?");
        sc->add_option("--genus", genus)->required();
        sc->add_option("--b", btype_s)->required();
        sc->add_option("--a", type_s)->required();
        sc->callback([&]() {
            require_text();
            out.begin("jordan.preceq");
            out.input("genus", genus);
            out.input("b", btype_s);
            out.input("a", type_s);
            bool v = preceq(parse_jordan_type(btype_s, "--b"), parse_jordan_type(type_s, "--a"),
                            model_of(genus));
            out.doc["result"] = v;
            out.finish(v ? "true" : "false");
        });
    }
    {
        auto* sc = jordan->add_subcommand("enum", "enumerate Jordan types");
        sc->add_option("--rank0", rank0, "total degree of a rank-0 class (exact enumeration)");
        sc->add_option("--class", a_s, "positive class for bounded enumeration");
        sc->add_option("--genus", genus);
        sc->add_option("--max-len", max_len);
        sc->add_option("--window", window);
        sc->callback([&]() {
            require_text();
            out.begin("jordan.enum");
            if (rank0 >= 0 && !a_s.empty())
                throw std::invalid_argument("--rank0: cannot be combined with --class");
            std::vector<JordanType> v;
            std::string bounds;
            if (rank0 >= 0) {
                out.input("rank0", rank0);
                v = enumerate_rank0(rank0);
                bounds = "exact";
                out.bound("exact", true);
            } else if (!a_s.empty()) {
                out.input("class", a_s);
                out.input("genus", genus);
                out.input("max_len", max_len);
                out.input("window", window);
                if (max_len < 1) throw std::invalid_argument("--max-len: must be >= 1");
                if (window < 0) throw std::invalid_argument("--window: must be >= 0");
                NumClass a = parse_num_class(a_s, "--class");
                v = enumerate_bounded(a, max_len, window, model_of(genus));
                if (a.rank == 0) {
                    bounds = "exact";
                    out.bound("exact", true);
                } else {
                    bounds = "max_len=" + std::to_string(max_len) +
                             " window=" + std::to_string(window);
                    out.bound("max_len", max_len);
                    out.bound("window", window);
                }
            } else {
                throw std::invalid_argument("--rank0: either --rank0 or --class is required");
            }
            out.doc["result"] = types_json(v);
            out.finish(types_text(v, bounds));
        });
    }
    {
        auto* sc = jordan->add_subcommand("downset", "all types preceding --type");
        sc->add_option("--genus", genus)->required();
        sc->add_option("--type", type_s)->required();
        sc->add_option("--window", window)->required();
        sc->callback([&]() {
            require_text();
            out.begin("jordan.downset");
            out.input("genus", genus);
            out.input("type", type_s);
            out.input("window", window);
            if (window < 0) throw std::invalid_argument("--window: must be >= 0");
            JordanType a = parse_jordan_type(type_s, "--type");
            auto v = downset(a, window, model_of(genus));
            std::string bounds;
            if (total_class(a, model_of(genus)).rank == 0) {
                bounds = "exact";
                out.bound("exact", true);
            } else {
                bounds = "window=" + std::to_string(window);
                out.bound("window", window);
            }
            out.doc["result"] = types_json(v);
            out.finish(types_text(v, bounds));
        });
    }
    {
        auto* sc = jordan->add_subcommand("diagram", "colored Young diagram of a type");
        sc->add_option("--genus", genus)->required();
        sc->add_option("--type", type_s)->required();
        sc->callback([&]() {
            out.begin("jordan.diagram");
            out.input("genus", genus);
            out.input("type", type_s);
            JordanType t = parse_jordan_type(type_s, "--type");
            CurveModel m = model_of(genus);
            if (out.format == "tex") {
                std::cout << render_young_tex(t, m);
            } else if (out.format == "json") {
                json rows = json::array();
                for (auto& row : young_boxes(t, m)) {
                    json r = json::array();
                    for (auto& box : row)
                        r.push_back({{"source", box.source},
                                     {"omega_power", box.omega_power},
                                     {"value", box.value.str()}});
                    rows.push_back(r);
                }
                out.doc["result"] = rows;
                out.finish("");
            } else {
                std::cout << render_young_text(t, m);
            }
        });
    }

    // ---- series ----
    auto* series = app.add_subcommand("series", "exact truncated Poincare series");
    series->require_subcommand(1);
    auto emit_series = [&](const QSeries& s) {
        out.doc["result"] = series_json(s);
        out.finish(s.str());
    };
    {
        auto* sc = series->add_subcommand("coh", "series of a positive-rank sheaf stack");
        sc->add_option("--genus", genus)->required();
        sc->add_option("--N", N)->required();
        sc->callback([&]() {
            require_text();
            out.begin("series.coh");
            out.input("genus", genus);
            out.input("N", N);
            out.bound("N", N);
            emit_series(poincare_series_positive_rank(model_of(genus), check_trunc(N)));
        });
    }
    {
        auto* sc = series->add_subcommand("torsion", "series of the length-d torsion stack");
        sc->add_option("--genus", genus)->required();
        sc->add_option("--d", d)->required();
        sc->add_option("--N", N)->required();
        sc->callback([&]() {
            require_text();
            out.begin("series.torsion");
            out.input("genus", genus);
            out.input("d", d);
            out.input("N", N);
            out.bound("N", N);
            if (d < 0) throw std::invalid_argument("--d: must be >= 0");
            emit_series(poincare_series_torsion(model_of(genus), d, check_trunc(N)));
        });
    }
    {
        auto* sc = series->add_subcommand("stratum", "series of one stratum");
        sc->add_option("--genus", genus)->required();
        sc->add_option("--type", type_s)->required();
        sc->add_option("--N", N)->required();
        sc->callback([&]() {
            require_text();
            out.begin("series.stratum");
            out.input("genus", genus);
            out.input("type", type_s);
            out.input("N", N);
            out.bound("N", N);
            emit_series(stratum_series(parse_jordan_type(type_s, "--type"), model_of(genus),
                                       check_trunc(N)));
        });
    }
    {
        auto* sc = series->add_subcommand("downset", "summed series over a down-set");
        sc->add_option("--genus", genus)->required();
        sc->add_option("--type", type_s)->required();
        sc->add_option("--window", window)->required();
        sc->add_option("--N", N)->required();
        sc->callback([&]() {
            require_text();
            out.begin("series.downset");
            out.input("genus", genus);
            out.input("type", type_s);
            out.input("window", window);
            out.input("N", N);
            out.bound("window", window);
            out.bound("N", N);
            if (window < 0) throw std::invalid_argument("--window: must be >= 0");
            emit_series(downset_series(parse_jordan_type(type_s, "--type"), window,
                                       model_of(genus), check_trunc(N)));
        });
    }

    // ---- hopf ----
    auto* hopf = app.add_subcommand("hopf", "tautological Hopf structure");
    hopf->require_subcommand(1);
    {
        auto* sc = hopf->add_subcommand("coproduct", "Whitney coproduct of a polynomial");
        sc->add_option("--genus", genus)->required();
        sc->add_option("--poly", poly_s)->required();
        sc->add_option("--a1", a_s)->required();
        sc->add_option("--a2", b_s)->required();
        sc->add_option("--N", N)->required();
        sc->callback([&]() {
            require_text();
            out.begin("hopf.coproduct");
            out.input("genus", genus);
            out.input("poly", poly_s);
            out.input("a1", a_s);
            out.input("a2", b_s);
            out.input("N", N);
            out.bound("N", N);
            CurveModel m = model_of(genus);
            HPoly p = parse_hpoly(poly_s, genus, "--poly");
            TensorPoly dd = coproduct(p, parse_num_class(a_s, "--a1"),
                                      parse_num_class(b_s, "--a2"), m, check_trunc(N));
            out.doc["result"] = tensor_json(dd);
            out.finish(dd.str());
        });
    }
    {
        auto* sc = hopf->add_subcommand("verify", "check the Hopf identities on generators");
        sc->add_option("--genus", genus)->required();
        sc->add_option("--maxdeg", d, "largest generator degree to test")->required();
        sc->add_option("--N", N)->required();
        sc->add_option("--d1", d1_s)->capture_default_str();
        sc->add_option("--d2", d2_s)->capture_default_str();
        sc->callback([&]() {
            require_text();
            out.begin("hopf.verify");
            out.input("genus", genus);
            out.input("maxdeg", d);
            out.input("N", N);
            out.input("d1", d1_s);
            out.input("d2", d2_s);
            out.bound("N", N);
            CurveModel m = model_of(genus);
            CurveCohomology X(genus);
            const long trunc = check_trunc(N);
            Int dd1 = parse_int(d1_s, "--d1"), dd2 = parse_int(d2_s, "--d2");
            if (d < 0) throw std::invalid_argument("--maxdeg: must be >= 0");
            KunnethClass K = total_chern_class({NumClass(1, dd1), NumClass(1, dd2)}, m, trunc);
            if (!K.has_unit_constant_term())
                throw std::runtime_error("product class lost its unit term");
            long cases = 0;
            bool ok = true;
            for (const TautGen& gen : generators_up_to(X, std::min((long)d, trunc))) {
                HPoly c = hpoly_gen(genus, gen);
                TensorPoly d12 = coproduct(c, {1, dd1}, {1, dd2}, m, trunc);
                TensorPoly d21 = coproduct(c, {1, dd2}, {1, dd1}, m, trunc);
                ok = ok && (d12.flip2() == d21);
                TensorPoly left = coproduct_in_slot(
                    coproduct(c, {1, dd1 + dd2}, {1, 0}, m, trunc), 0, dd1, dd2, m, trunc);
                TensorPoly right = coproduct_in_slot(coproduct(c, {1, dd1}, {1, dd2}, m, trunc),
                                                     1, dd2, Int(0), m, trunc);
                ok = ok && (left == right);
                ++cases;
            }
            if (!ok) throw std::runtime_error("hopf identity check failed");
            out.doc["result"] = {{"ok", true}, {"generators", cases}};
            out.finish("ok (" + std::to_string(cases) + " generators)");
        });
    }

    // ---- gr ----
    auto* gr = app.add_subcommand("gr", "associated-graded classes on strata");
    gr->require_subcommand(1);
    {
        auto* sc = gr->add_subcommand("product", "leading term of a product of capped classes");
        sc->add_option("--genus", genus)->required();
        sc->add_option("--rows", rows_s, "factor classes, top row first")->required();
        sc->add_option("--polys", polys_s, "optional cap polynomials, ';'-separated");
        sc->add_option("--N", N)->required();
        sc->callback([&]() {
            require_text();
            out.begin("gr.product");
            out.input("genus", genus);
            out.input("rows", rows_s);
            out.input("polys", polys_s);
            out.input("N", N);
            out.bound("N", N);
            CurveModel m = model_of(genus);
            RowClasses rows = parse_row_classes(rows_s, "--rows");
            std::vector<std::string> polys;
            if (!polys_s.empty()) {
                std::stringstream ss(polys_s);
                std::string item;
                while (std::getline(ss, item, ';')) polys.push_back(item);
                if (polys.size() != rows.size())
                    throw std::invalid_argument("--polys: need one polynomial per factor");
            }
            std::vector<GenClass> factors;
            for (std::size_t i = 0; i < rows.size(); ++i) {
                GenClass f = fundamental_class(rows[i], genus);
                if (!polys.empty()) f.poly = parse_hpoly(polys[i], genus, "--polys");
                factors.push_back(std::move(f));
            }
            auto lp = leading_product(factors, m, check_trunc(N));
            if (!lp.ok())
                throw std::invalid_argument(
                    "--rows: no Jordan type has these rows (first failure at index " +
                    std::to_string(lp.first_invalid) + ")");
            out.doc["result"] = stratum_json(*lp.value);
            out.finish(stratum_text(*lp.value));
        });
    }
    {
        auto* sc = gr->add_subcommand("act", "act on the fundamental class of a stratum");
        sc->add_option("--genus", genus)->required();
        sc->add_option("--type", type_s)->required();
        sc->add_option("--hpoly", h_s, "acting tautological polynomial")->required();
        sc->add_option("--N", N)->required();
        sc->callback([&]() {
            require_text();
            out.begin("gr.act");
            out.input("genus", genus);
            out.input("type", type_s);
            out.input("hpoly", h_s);
            out.input("N", N);
            out.bound("N", N);
            CurveModel m = model_of(genus);
            JordanType t = parse_jordan_type(type_s, "--type");
            HPoly h = parse_hpoly(h_s, genus, "--hpoly");
            StratumClass x(t, t.entries(),
                           TensorPoly::unit(slots_for_classes(t.entries()), genus),
                           vb_stack_rank(t, m), dim_coh_stack(total_class(t, m), m));
            StratumClass hx = hmodule_act(h, x, m, check_trunc(N));
            out.doc["result"] = stratum_json(hx);
            out.finish(stratum_text(hx));
        });
    }
    {
        auto* sc = gr->add_subcommand("sheaves", "strata sheaf classes of a type");
        sc->add_option("--genus", genus)->required();
        sc->add_option("--type", type_s)->required();
        sc->add_option("--N", N)->required();
        sc->callback([&]() {
            require_text();
            out.begin("gr.sheaves");
            out.input("genus", genus);
            out.input("type", type_s);
            out.input("N", N);
            out.bound("N", N);
            CurveModel m = model_of(genus);
            JordanType t = parse_jordan_type(type_s, "--type");
            const long trunc = check_trunc(N);
            auto cs = strata_sheaf_classes(t, m, trunc);
            auto ctx = t.entries();
            auto slots = slots_for_classes(ctx);
            const Int l = m.canonical_degree();
            std::string text;
            json arr = json::array();
            for (std::size_t i = 0; i < cs.size(); ++i) {
                text += "E" + std::to_string(i + 1) + ": class " + cs[i].num_class().str() +
                        "\n  " + cs[i].str() + "\n";
                arr.push_back(kunneth_json(cs[i]));
            }
            // slot-sheaf recovery: [E_{a_i}] = [E_i] - [E_{i+1} (x) w^{-1}]
            bool consistent = true;
            for (std::size_t i = 0; i + 1 < cs.size(); ++i) {
                KunnethClass diff = k_difference(cs[i], twist_class(cs[i + 1], -l));
                KunnethClass direct = canonical_slot_class(slots, ctx, i, genus, trunc);
                consistent =
                    consistent && diff.same_polys(direct) && diff.num_class() == ctx[i];
            }
            text += std::string("slot_recovery: ") + (consistent ? "ok" : "FAILED") + "\n";
            out.doc["result"] = {{"sheaves", arr}, {"slot_recovery", consistent}};
            if (!consistent) throw std::runtime_error("slot sheaf recovery failed");
            out.finish(text);
        });
    }

    // ---- ops ----
    auto* ops = app.add_subcommand("ops", "print the operation -> subcommand registry");
    ops->callback([&]() {
        require_text();
        out.begin("ops");
        std::string text;
        json arr = json::array();
        for (auto& [op, sub] : kOpRegistry) {
            text += op + " -> " + sub + "\n";
            arr.push_back({{"op", op}, {"subcommand", sub}});
        }
        out.doc["result"] = arr;
        out.finish(text);
    });

    // allow --format after any subcommand
    std::function<void(CLI::App*)> allow_fallthrough = [&](CLI::App* a) {
        for (CLI::App* sub : a->get_subcommands({})) {
            sub->fallthrough();
            allow_fallthrough(sub);
        }
    };
    allow_fallthrough(&app);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const degree_overflow_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

#include "ptopo/chain.hpp"
#include "ptopo/complex.hpp"
#include "ptopo/deform.hpp"
#include "ptopo/fixtures.hpp"
#include "ptopo/flatnorm.hpp"
#include "ptopo/homology.hpp"
#include "ptopo/io_json.hpp"
#include "ptopo/polytope.hpp"
#include "ptopo/refine.hpp"
#include "ptopo/steenrod.hpp"
#include "ptopo/subdivision.hpp"
#include "ptopo/volume.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <iostream>
#include <set>
#include <sstream>

using namespace ptopo;

namespace {

struct Ctx {
    std::string command_line;
    std::map<std::string, std::string> inputs;
    std::map<std::string, std::string> params;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
};

std::string load_input(Ctx& ctx, const std::string& path) {
    std::string text = read_file(path);
    ctx.inputs[path] = content_digest(text);
    return text;
}

void emit(Ctx& ctx, const std::string& path, const std::string& content) {
    write_file(path, content);
    RunManifest m;
    m.command = ctx.command_line;
    m.input_digests = ctx.inputs;
    m.parameters = ctx.params;
    m.timing_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                            ctx.start)
                      .count();
    write_file(path + ".manifest.json", m.to_json());
}

SimplicialComplex load_complex(Ctx& ctx, const std::string& path) {
    std::string text = load_input(ctx, path);
    if (path.size() >= 4 && path.substr(path.size() - 4) == ".off")
        return SimplicialComplex::from_off(text);
    return SimplicialComplex::from_json(text);
}

Ring parse_ring(const std::string& s) {
    if (s == "z" || s == "Z") return Ring::Z();
    if (s == "z2") return Ring::Zp(2);
    if (s == "z3") return Ring::Zp(3);
    if (s == "z5") return Ring::Zp(5);
    fail_input("unknown coefficient ring '" + s + "' (use z|z2|z3|z5)");
}

std::string group_str(const GroupSummary& g, const Ring& ring) {
    std::string s;
    if (ring.is_z()) {
        if (g.free_rank == 1) s = "Z";
        else if (g.free_rank > 1) s = "Z^" + std::to_string(g.free_rank);
        for (const auto& t : g.torsion) s += (s.empty() ? "" : " + ") + ("Z/" + t.str());
        if (s.empty()) s = "0";
    } else {
        if (g.free_rank == 0) s = "0";
        else if (g.free_rank == 1) s = "Z" + std::to_string(ring.p);
        else s = "Z" + std::to_string(ring.p) + "^" + std::to_string(g.free_rank);
    }
    return s;
}

nlohmann::json groups_json(const HomologyGroups& h) {
    nlohmann::json out;
    for (size_t d = 0; d < h.groups.size(); ++d)
        out["H" + std::to_string(d)] = group_str(h.groups[d], h.ring);
    return out;
}

std::pair<int, size_t> parse_class_id(const std::string& s) {
    auto colon = s.find(':');
    require_input(colon != std::string::npos, "class id must look like deg:index");
    return {std::stoi(s.substr(0, colon)), std::stoul(s.substr(colon + 1))};
}

nlohmann::json cochain_json(const Cochain& c) {
    nlohmann::json out;
    out["deg"] = c.deg;
    nlohmann::json vals = nlohmann::json::array();
    for (const auto& v : c.values) vals.push_back(v.str());
    out["values"] = vals;
    return out;
}

int run(int argc, char** argv) {
    CLI::App app{"exact-arithmetic simplicial topology toolkit"};
    app.require_subcommand(1);
    uint64_t seed = 0;
    app.add_option("--seed", seed, "seed for all sampling streams");

    Ctx ctx;
    for (int i = 0; i < argc; ++i) ctx.command_line += std::string(i ? " " : "") + argv[i];

    // tri
    auto* tri = app.add_subcommand("tri", "triangulate a polytope");
    std::string tri_in, tri_out = "triangulation.json";
    tri->add_option("input", tri_in)->required();
    tri->add_option("-o,--out", tri_out);
    tri->callback([&] {
        Polytope p = Polytope::from_json(load_input(ctx, tri_in));
        PolytopeTriangulation t = triangulate_polytope(p);
        ctx.params["pieces"] = std::to_string(t.pieces.size());
        emit(ctx, tri_out, t.to_json());
        std::cout << t.pieces.size() << " pieces\n";
    });

    // subdivide
    auto* sub = app.add_subcommand("subdivide", "barycentric subdivision");
    std::string sub_in, sub_out = "subdivision.json";
    sub->add_option("input", sub_in)->required();
    sub->add_option("-o,--out", sub_out);
    sub->callback([&] {
        SimplicialComplex k = load_complex(ctx, sub_in);
        emit(ctx, sub_out, barycentric(k).to_json());
    });

    // dual
    auto* dual = app.add_subcommand("dual", "dual skeleton inside the barycentric subdivision");
    std::string dual_in, dual_out = "dual.json";
    int dual_d = 0;
    dual->add_option("input", dual_in)->required();
    dual->add_option("-d,--dim", dual_d)->required();
    dual->add_option("-o,--out", dual_out);
    dual->callback([&] {
        SimplicialComplex k = load_complex(ctx, dual_in);
        ctx.params["d"] = std::to_string(dual_d);
        emit(ctx, dual_out, dual_skeleton(k, dual_d).to_json());
    });

    // refine
    auto* ref = app.add_subcommand("refine", "refine so polytopes embed into the skeleton");
    std::string ref_in, ref_out = "refined.json";
    std::vector<std::string> ref_polys;
    bool ref_polyhedron = false;
    ref->add_option("input", ref_in)->required();
    ref->add_option("-p,--polytope", ref_polys)->required();
    ref->add_flag("--polyhedron", ref_polyhedron, "use the closed-PL-manifold variant");
    ref->add_option("-o,--out", ref_out);
    ref->callback([&] {
        SimplicialComplex k = load_complex(ctx, ref_in);
        std::vector<Polytope> polys;
        for (const auto& path : ref_polys)
            polys.push_back(Polytope::from_json(load_input(ctx, path)));
        RefineReport r = ref_polyhedron ? refine_in_polyhedron(k, polys) : refine_to_embed(k, polys);
        ctx.params["pieces"] = std::to_string(r.pieces_processed);
        emit(ctx, ref_out, r.complex.to_json());
    });

    // homology
    auto* hom = app.add_subcommand("homology", "simplicial (co)homology groups");
    std::string hom_in, hom_out = "homology.json", hom_coeff = "z";
    bool hom_groups_only = false;
    hom->add_option("input", hom_in)->required();
    hom->add_option("--coeff", hom_coeff, "z|z2|z3|z5");
    hom->add_flag("--groups-only", hom_groups_only, "skip cocycle representatives");
    hom->add_option("-o,--out", hom_out);
    hom->callback([&] {
        SimplicialComplex k = load_complex(ctx, hom_in);
        Ring ring = parse_ring(hom_coeff);
        ctx.params["coeff"] = hom_coeff;
        nlohmann::json out;
        out["homology"] = groups_json(homology(k, ring));
        if (!hom_groups_only) {
            CohomologyResult c = cohomology(k, ring);
            out["cohomology"] = groups_json(c.groups);
            nlohmann::json gens;
            for (size_t d = 0; d < c.generators.size(); ++d) {
                nlohmann::json per = nlohmann::json::array();
                for (const auto& g : c.generators[d]) per.push_back(cochain_json(g));
                gens["H" + std::to_string(d)] = per;
            }
            out["generators"] = gens;
        }
        std::string text = out.dump(2);
        emit(ctx, hom_out, text);
        std::cout << out["homology"].dump() << "\n";
    });

    // flatnorm
    auto* fn = app.add_subcommand("flatnorm", "flat norm decomposition of a chain");
    std::string fn_complex, fn_chain, fn_out = "flatnorm.json", fn_csv;
    long fn_brute = -1;
    fn->add_option("complex", fn_complex)->required();
    fn->add_option("chain", fn_chain)->required();
    fn->add_option("--brute", fn_brute, "use the brute-force oracle with this bound");
    fn->add_option("-o,--out", fn_out);
    fn->add_option("--csv", fn_csv);
    fn->callback([&] {
        SimplicialComplex k = load_complex(ctx, fn_complex);
        Chain t = chain_from_json(k, load_input(ctx, fn_chain));
        FlatDecomposition d =
            fn_brute >= 0 ? flat_norm_bruteforce(t, Int(fn_brute)) : flat_norm_lp(t);
        emit(ctx, fn_out, flat_to_json(d, t));
        if (!fn_csv.empty()) emit(ctx, fn_csv, flat_to_csv(d));
        std::cout << "F = " << real_str17(d.value) << "\n";
    });

    // steenrod
    auto* st = app.add_subcommand("steenrod", "Steenrod algebra operations");
    st->require_subcommand(1);
    auto* red = st->add_subcommand("reduce", "Adem reduction to the admissible basis");
    uint64_t red_p = 2;
    std::string red_word, red_out;
    red->add_option("--p", red_p);
    red->add_option("--word", red_word)->required();
    red->add_option("-o,--out", red_out);
    red->callback([&] {
        SqWord w = parse_word(red_word, red_p);
        SteenrodElement e = adem_reduce(element_of(w, red_p));
        ctx.params["p"] = std::to_string(red_p);
        ctx.params["word"] = red_word;
        std::cout << e.str() << "\n";
        if (!red_out.empty()) {
            nlohmann::json out;
            out["input"] = word_str(w, red_p);
            out["reduced"] = e.str();
            nlohmann::json terms = nlohmann::json::array();
            for (const auto& [word, coeff] : e.terms) {
                nlohmann::json t;
                t["word"] = word;
                t["coeff"] = coeff;
                terms.push_back(t);
            }
            out["terms"] = terms;
            emit(ctx, red_out, out.dump(2));
        }
    });
    auto* ap = st->add_subcommand("apply", "apply Sq^i to a cohomology class");
    std::string ap_complex, ap_class = "1:0", ap_out = "steenrod.json";
    int ap_i = 1;
    uint64_t ap_mod = 2;
    ap->add_option("complex", ap_complex)->required();
    ap->add_option("--i", ap_i)->required();
    ap->add_option("--mod", ap_mod);
    ap->add_option("--class", ap_class, "generator id deg:index");
    ap->add_option("-o,--out", ap_out);
    ap->callback([&] {
        require_input(ap_mod == 2, "cochain-level Steenrod squares exist mod 2 only");
        SimplicialComplex k = load_complex(ctx, ap_complex);
        CohomologyResult c = cohomology(k, Ring::Zp(2));
        auto [deg, idx] = parse_class_id(ap_class);
        require_input(deg >= 0 && deg < static_cast<int>(c.generators.size()) &&
                          idx < c.generators[deg].size(),
                      "no such generator class");
        Cochain result = sq_on_cochain(ap_i, c.generators[deg][idx]);
        nlohmann::json out;
        out["class"] = ap_class;
        out["i"] = ap_i;
        out["result"] = cochain_json(result);
        if (result.deg <= k.dim()) {
            auto coords = express_in_generators(result, c.generators[result.deg]);
            require_internal(coords.has_value(), "Sq image is not a cocycle class");
            out["coordinates"] = *coords;
        }
        ctx.params["i"] = std::to_string(ap_i);
        ctx.params["class"] = ap_class;
        emit(ctx, ap_out, out.dump(2));
        std::cout << out["coordinates"].dump() << "\n";
    });

    // bockstein
    auto* bk = app.add_subcommand("bockstein", "mod-p Bockstein of a generator class");
    std::string bk_complex, bk_class = "1:0", bk_out = "bockstein.json";
    uint64_t bk_p = 3;
    bk->add_option("complex", bk_complex)->required();
    bk->add_option("--p", bk_p);
    bk->add_option("--class", bk_class);
    bk->add_option("-o,--out", bk_out);
    bk->callback([&] {
        SimplicialComplex k = load_complex(ctx, bk_complex);
        CohomologyResult c = cohomology(k, Ring::Zp(bk_p));
        auto [deg, idx] = parse_class_id(bk_class);
        require_input(deg >= 0 && deg < static_cast<int>(c.generators.size()) &&
                          idx < c.generators[deg].size(),
                      "no such generator class");
        Cochain beta = bockstein(c.generators[deg][idx], bk_p);
        nlohmann::json out;
        out["class"] = bk_class;
        out["p"] = bk_p;
        out["result"] = cochain_json(beta);
        if (beta.deg <= k.dim()) {
            auto coords = express_in_generators(beta, c.generators[beta.deg]);
            require_internal(coords.has_value(), "Bockstein image is not a cocycle class");
            out["coordinates"] = *coords;
        }
        ctx.params["p"] = std::to_string(bk_p);
        ctx.params["class"] = bk_class;
        emit(ctx, bk_out, out.dump(2));
        std::cout << out["coordinates"].dump() << "\n";
    });

    // profile
    auto* pr = app.add_subcommand("profile", "radial profile curves");
    std::string pr_kind, pr_csv = "profile.csv";
    double pr_mu = 0.5, pr_da = 0.05, pr_eta = 1.0, pr_tmax = -1;
    size_t pr_points = 512;
    pr->add_option("kind", pr_kind, "phi|psi")->required();
    pr->add_option("--mu", pr_mu);
    pr->add_option("--delta-a", pr_da);
    pr->add_option("--eta", pr_eta);
    pr->add_option("--points", pr_points);
    pr->add_option("--tmax", pr_tmax);
    pr->add_option("--csv", pr_csv);
    pr->callback([&] {
        require_input(pr_kind == "phi" || pr_kind == "psi", "profile kind must be phi or psi");
        ProfileParams p{pr_mu, pr_da, pr_eta};
        p.validate();
        double tmax = pr_tmax > 0 ? pr_tmax : pr_eta * 1.25;
        std::string csv = "t,value\n";
        for (size_t i = 0; i <= pr_points; ++i) {
            double t = tmax * static_cast<double>(i) / static_cast<double>(pr_points);
            double v = pr_kind == "phi" ? phi_profile(p, t) : smooth_profile(p, t);
            csv += double_str17(t) + "," + double_str17(v) + "\n";
        }
        ctx.params["kind"] = pr_kind;
        ctx.params["mu"] = double_str17(pr_mu);
        emit(ctx, pr_csv, csv);
    });

    // experiment
    auto* ex = app.add_subcommand("experiment", "quantitative experiments");
    ex->require_subcommand(1);
    auto* sq = ex->add_subcommand("squash", "mass contraction under the radial squash");
    std::string sq_gammas = "0.5,0.25,0.125", sq_out = "squash.json";
    int sq_m = 2, sq_k = 0;
    double sq_da = 0.1, sq_eta = 1.0, sq_eps = 0.0;
    sq->add_option("--gamma", sq_gammas, "comma separated gamma values");
    sq->add_option("--m", sq_m);
    sq->add_option("--k", sq_k);
    sq->add_option("--delta-a", sq_da);
    sq->add_option("--eta", sq_eta);
    sq->add_option("--eps", sq_eps);
    sq->add_option("-o,--out", sq_out);
    sq->callback([&] {
        std::vector<double> gammas;
        std::istringstream in(sq_gammas);
        std::string tok;
        while (std::getline(in, tok, ',')) gammas.push_back(std::stod(tok));
        ProfileParams p{1.0, sq_da, sq_eta};
        MassContractionResult r = mass_contraction_experiment(sq_m, sq_k, gammas, p, sq_eps);
        nlohmann::json out;
        nlohmann::json rows = nlohmann::json::array();
        for (size_t i = 0; i < r.gammas.size(); ++i) {
            nlohmann::json row;
            row["gamma"] = double_str17(r.gammas[i]);
            row["measured"] = double_str17(r.measured[i]);
            row["bound"] = double_str17(r.bounds[i]);
            rows.push_back(row);
        }
        out["rows"] = rows;
        out["fitted_exponent"] = double_str17(r.fitted_exponent);
        out["expected_exponent"] = sq_m - sq_k;
        out["c_constant"] = double_str17(r.c_constant);
        ctx.params["m"] = std::to_string(sq_m);
        ctx.params["k"] = std::to_string(sq_k);
        emit(ctx, sq_out, out.dump(2));
        std::cout << "fitted exponent " << double_str17(r.fitted_exponent) << "\n";
    });

    // validate
    auto* val = app.add_subcommand("validate", "check file invariants");
    std::string val_in, val_out;
    val->add_option("input", val_in)->required();
    val->add_option("-o,--out", val_out);
    val->callback([&] {
        std::string text = load_input(ctx, val_in);
        nlohmann::json j = parse_json(text);
        std::vector<std::string> lines;
        bool ok = true;
        auto check = [&](bool cond, const std::string& what) {
            lines.push_back(std::string(cond ? "pass: " : "fail: ") + what);
            if (!cond) ok = false;
        };
        if (j.contains("points")) {
            try {
                Polytope::from_json(text);
                check(true, "extremality");
            } catch (const Error& e) {
                check(false, std::string("extremality (") + e.what() + ")");
            }
        } else if (j.contains("terms")) {
            bool nonzero = true, arity = true;
            int dim = j.value("dim", 0);
            for (const auto& t : j["terms"]) {
                std::string cs = t["coeff"].is_string() ? t["coeff"].get<std::string>()
                                                        : t["coeff"].dump();
                if (cs == "0") nonzero = false;
                if (static_cast<int>(t["simplex"].size()) != dim + 1) arity = false;
            }
            check(nonzero, "nonzero coefficients");
            check(arity, "term arity matches dim");
        } else if (j.contains("vertices") && j.contains("simplices")) {
            // face closure: every listed simplex's facets must be listed
            try {
                SimplicialComplex k = SimplicialComplex::from_json(text);
                std::set<VertexList> listed;
                for (const auto& [key, arr] : j["simplices"].items()) {
                    (void)key;
                    for (const auto& row : arr) {
                        VertexList ids;
                        for (const auto& v : row) ids.push_back(v.get<int>());
                        std::sort(ids.begin(), ids.end());
                        listed.insert(ids);
                    }
                }
                bool closure = true;
                for (const auto& ids : listed) {
                    if (ids.size() <= 1) continue;
                    for (size_t drop = 0; drop < ids.size(); ++drop) {
                        VertexList f;
                        for (size_t i = 0; i < ids.size(); ++i)
                            if (i != drop) f.push_back(ids[i]);
                        if (!listed.count(f)) closure = false;
                    }
                }
                check(closure, "face closure");
                check(true, "affine independence");
                std::string why;
                check(k.pairwise_intersections_ok(&why), "pairwise intersections are faces");
            } catch (const Error& e) {
                check(false, std::string("complex invariants (") + e.what() + ")");
            }
        } else {
            fail_input("unknown file type (expected polytope, chain, or complex)");
        }
        std::string report;
        for (const auto& l : lines) report += l + "\n";
        report += ok ? "VALID\n" : "INVALID\n";
        std::cout << report;
        if (!val_out.empty()) emit(ctx, val_out, report);
        if (!ok) fail_input("validation failed");
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2; // bad usage is an input error
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        switch (e.kind) {
            case Error::Kind::Input: return 2;
            case Error::Kind::Guard: return 3;
            case Error::Kind::Internal: return 4;
        }
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

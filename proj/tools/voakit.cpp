// Command-line front end: verification-case registry runner plus small
// per-module utilities (engine products, lattice predicates, character
// residuals, ribbon-data checks, decomposition regrouping).

#include <CLI11.hpp>

#include <voakit/cases.hpp>

#include <cstdlib>
#include <iostream>

using namespace voakit;

namespace {

std::string resolve_data_dir(const std::string& flag_value) {
    if (const char* env = std::getenv("VOAKIT_DATA"); env && *env) return env;
    return flag_value;
}

Mat mat_from_json_text(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    Mat out;
    for (const auto& row : j) {
        Vec v;
        for (const auto& x : row)
            v.push_back(x.is_string() ? parse_rational(x.get<std::string>())
                                      : Rational(x.get<long>()));
        out.push_back(std::move(v));
    }
    return out;
}

Vec vec_from_json_text(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    Vec v;
    for (const auto& x : j)
        v.push_back(x.is_string() ? parse_rational(x.get<std::string>())
                                  : Rational(x.get<long>()));
    return v;
}

std::string mat_str(const Mat& m) {
    std::string s = "[";
    for (std::size_t i = 0; i < m.size(); ++i) {
        s += (i ? ", [" : "[");
        for (std::size_t j = 0; j < m[i].size(); ++j)
            s += (j ? ", " : "") + to_string(m[i][j]);
        s += "]";
    }
    return s + "]";
}

DecompositionData load_decomposition(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    nlohmann::json j;
    in >> j;
    auto slash = path.find_last_of('/');
    std::string dir = slash == std::string::npos ? "." : path.substr(0, slash);
    return decomposition_from_json(j, dir);
}

int cmd_verify(const std::string& data_dir, const std::vector<std::string>& ids,
               std::optional<long> order, bool as_json) {
    auto registry = load_case_registry(data_dir + "/cases.json");
    std::vector<CaseDef> selected;
    if (ids.empty()) {
        selected = registry;
    } else {
        for (const auto& id : ids) {
            auto it = std::find_if(registry.begin(), registry.end(),
                                   [&](const CaseDef& c) { return c.id == id; });
            if (it == registry.end()) throw UnknownCase("unknown case id '" + id + "'");
            selected.push_back(*it);
        }
    }
    std::optional<Rational> ord;
    if (order) ord = Rational(*order);

    bool all_pass = true;
    nlohmann::json jreports = nlohmann::json::array();
    for (const auto& c : selected) {
        CaseReport r = run_case(c, data_dir, ord);
        if (r.status == "fail") all_pass = false;
        if (as_json) {
            jreports.push_back(report_to_json(r));
        } else {
            std::cout << r.status << "  " << r.id << "\n";
            std::cout << "    computed:   " << r.computed << "\n";
            if (!r.expected.empty()) std::cout << "    expected:   " << r.expected << "\n";
            std::cout << "    provenance: " << r.provenance << "\n";
        }
    }
    if (as_json) std::cout << jreports.dump(2) << "\n";
    return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"voakit: exact workbench for Heisenberg-coset computations"};
    app.require_subcommand(1);

    // verify
    auto* verify = app.add_subcommand("verify", "run verification cases from the registry");
    std::vector<std::string> case_ids;
    std::optional<long> order;
    bool as_json = false;
    std::string data_flag = "data";
    verify->add_option("--case", case_ids, "case id (repeatable; default: all)");
    verify->add_option("--order", order, "override truncation order for character cases");
    verify->add_flag("--json", as_json, "emit the report as JSON");
    verify->add_option("--data", data_flag, "data directory (env VOAKIT_DATA overrides)");

    // nth-product / canon
    auto* nthp = app.add_subcommand("nth-product", "compute a_(n)b in a preset");
    std::string preset_name, expr_a, expr_b, expr_one;
    long nmode = 0;
    nthp->add_option("--preset", preset_name)->required();
    nthp->add_option("--a", expr_a)->required();
    nthp->add_option("--b", expr_b)->required();
    nthp->add_option("-n", nmode)->required();

    auto* canon = app.add_subcommand("canon", "canonicalize a state expression");
    canon->add_option("--preset", preset_name)->required();
    canon->add_option("expr", expr_one)->required();

    // lattice
    auto* lat = app.add_subcommand("lattice", "lattice predicates");
    lat->require_subcommand(1);
    std::string lat_file, sub_text, targets_text;
    for (auto* sc : {lat->add_subcommand("dual"), lat->add_subcommand("discriminant")})
        sc->add_option("--file", lat_file)->required();
    auto* lat_comp = lat->add_subcommand("complement");
    lat_comp->add_option("--file", lat_file)->required();
    lat_comp->add_option("--sub", sub_text, "sub-basis rows, JSON")->required();
    auto* lat_lift = lat->add_subcommand("solve-lift");
    lat_lift->add_option("--file", lat_file)->required();
    lat_lift->add_option("--targets", targets_text, "target pairings, JSON")->required();
    auto* lat_ext = lat->add_subcommand("check-extension");
    lat_ext->add_option("--file", lat_file)->required();
    lat_ext->add_option("--sub", sub_text, "sub-basis rows, JSON")->required();

    // char
    auto* chr = app.add_subcommand("char", "character computations");
    chr->require_subcommand(1);
    std::string char_file, form_text, mu_text;
    long char_order = 20;
    std::vector<std::string> summand_specs;
    auto* chr_res = chr->add_subcommand("residual", "decomposition residual report");
    chr_res->add_option("--char", char_file)->required();
    chr_res->add_option("--form", form_text, "weight form, JSON")->required();
    chr_res->add_option("--summand", summand_specs, "MU=FILE (repeatable)")->required();
    chr_res->add_option("--order", char_order);
    auto* chr_branch = chr->add_subcommand("branch", "branching series of one charge");
    chr_branch->add_option("--char", char_file)->required();
    chr_branch->add_option("--form", form_text)->required();
    chr_branch->add_option("--mu", mu_text, "charge vector, JSON")->required();
    chr_branch->add_option("--order", char_order);

    // mtc
    auto* mtc = app.add_subcommand("mtc", "modular-data checks");
    mtc->require_subcommand(1);
    std::string ribbon_file, Jlab, Xlab, Plab;
    long spow = 1;
    auto* hopf = mtc->add_subcommand("hopf", "fixed-point Hopf criterion");
    hopf->add_option("--data", ribbon_file)->required();
    hopf->add_option("--J", Jlab)->required();
    hopf->add_option("--X", Xlab)->required();
    hopf->add_option("--s", spow)->required();
    hopf->add_option("--P", Plab)->required();

    // modrep
    auto* mod = app.add_subcommand("modrep", "label-level module bookkeeping");
    mod->require_subcommand(1);
    std::string decomp_file, diagram_file, relabel_text, sub_file, mid_file, quot_file;
    auto* re = mod->add_subcommand("regroup");
    re->add_option("--data", decomp_file)->required();
    auto* sp = mod->add_subcommand("split");
    sp->add_option("--data", decomp_file)->required();
    auto* fu = mod->add_subcommand("fuse");
    fu->add_option("--diagram", diagram_file)->required();
    fu->add_option("--map", relabel_text, "relabeling, JSON object")->required();
    fu->add_option("--J", Jlab, "simple-current label");
    auto* ses = mod->add_subcommand("check-ses");
    ses->add_option("--sub", sub_file)->required();
    ses->add_option("--mid", mid_file)->required();
    ses->add_option("--quot", quot_file)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*verify) return cmd_verify(resolve_data_dir(data_flag), case_ids, order, as_json);

        if (*nthp) {
            Preset p = preset_by_name(preset_name);
            State v = p.ctx.nth(p.state(expr_a), p.state(expr_b), nmode);
            std::cout << p.ctx.state_str(v) << "\n";
            return 0;
        }
        if (*canon) {
            Preset p = preset_by_name(preset_name);
            std::cout << p.ctx.state_str(p.state(expr_one)) << "\n";
            return 0;
        }

        if (*lat) {
            Lattice l = lattice_from_file(lat_file);
            if (*lat->get_subcommand("dual")) {
                std::cout << "dual basis: " << mat_str(dual_lattice(l).basis) << "\n";
            } else if (*lat->get_subcommand("discriminant")) {
                auto d = discriminant_group(l);
                std::cout << "|L'/L| = " << d.order.get_str() << ", invariant factors:";
                for (const auto& f : d.invariant_factors) std::cout << " " << f.get_str();
                std::cout << "\n";
            } else if (*lat_comp) {
                std::cout << "complement basis: "
                          << mat_str(orthogonal_complement(l, mat_from_json_text(sub_text)))
                          << "\n";
            } else if (*lat_lift) {
                auto s = solve_lift(l, vec_from_json_text(targets_text));
                std::cout << "alpha = " << mat_str({s.alpha}) << " + L'\n";
            } else if (*lat_ext) {
                auto kind = extension_check(l, mat_from_json_text(sub_text));
                std::cout << (kind == ExtensionKind::voa        ? "voa"
                              : kind == ExtensionKind::super_voa ? "super-voa"
                                                                 : "not-extension")
                          << "\n";
            }
            return 0;
        }

        if (*chr) {
            auto ch = character_from_file(char_file);
            Mat form = mat_from_json_text(form_text);
            if (*chr_res) {
                std::vector<DecompositionSummand> parts;
                for (const auto& spec : summand_specs) {
                    auto eq = spec.find('=');
                    if (eq == std::string::npos)
                        throw std::invalid_argument("summand must be MU=FILE");
                    parts.push_back({vec_from_json_text(spec.substr(0, eq)),
                                     character_from_file(spec.substr(eq + 1)).series});
                }
                auto rep = verify_decomposition(ch.series, form, parts, Rational(char_order));
                if (rep.ok) {
                    std::cout << "zero residual to order " << char_order << "\n";
                    return 0;
                }
                std::cout << "residual from order " << to_string(*rep.residual.min_exponent())
                          << "\n";
                return 1;
            }
            if (*chr_branch) {
                auto series =
                    branching_extract(ch.series, form, vec_from_json_text(mu_text),
                                      Rational(char_order));
                CharacterDatum out{ch.label + ":branch", series, form};
                std::cout << character_to_json(out).dump(2) << "\n";
                return 0;
            }
        }

        if (*mtc) {
            auto r = ribbon_from_file(ribbon_file);
            auto res = hopf_criterion(r, Jlab, Xlab, spow, Plab);
            std::cout << "verdict: "
                      << (res.verdict == HopfVerdict::case1_Szero ? "case1-S-zero"
                          : res.verdict == HopfVerdict::case2_theta_balanced
                              ? "case2-theta-balanced"
                              : "violation")
                      << ", J^s = " << res.fixed_power << ", scalar magnitude "
                      << to_string(res.scalar_magnitude) << ", phase " << res.scalar_phase.str()
                      << "\n";
            return res.verdict == HopfVerdict::violation ? 1 : 0;
        }

        if (*mod) {
            if (*re || *sp) {
                auto data = load_decomposition(decomp_file);
                if (*re) {
                    auto res = sw_regroup(data);
                    std::cout << "stabilizer basis: " << mat_str(res.stabilizer.basis) << "\n";
                    std::cout << "quotient: ";
                    for (std::size_t i = 0; i < res.quotient.finite_factors.size(); ++i)
                        std::cout << (i ? " x " : "") << "Z/" << res.quotient.finite_factors[i];
                    if (res.quotient.free_rank)
                        std::cout << (res.quotient.finite_factors.empty() ? "" : " x ") << "Z^"
                                  << res.quotient.free_rank;
                    if (res.quotient.finite_factors.empty() && !res.quotient.free_rank)
                        std::cout << "trivial";
                    std::cout << "\nclasses:\n";
                    for (const auto& [mu, factors] : res.grouped) {
                        std::cout << "  (" << vec_key(mu) << ") ->";
                        for (const auto& f : factors) std::cout << " " << f;
                        std::cout << "\n";
                    }
                } else {
                    auto orbits = orbit_split(data);
                    std::cout << orbits.size() << " orbit(s)\n";
                    for (std::size_t i = 0; i < orbits.size(); ++i) {
                        std::cout << "  orbit " << i << ":";
                        for (const auto& mu : orbits[i].orbit_reps)
                            std::cout << " (" << vec_key(mu) << ")";
                        std::cout << "\n";
                    }
                }
                return 0;
            }
            if (*fu) {
                std::ifstream in(diagram_file);
                if (!in) throw std::runtime_error("cannot open '" + diagram_file + "'");
                nlohmann::json j;
                in >> j;
                auto d = diagram_from_json(j);
                std::map<std::string, std::string> relabel;
                const nlohmann::json relabel_json = nlohmann::json::parse(relabel_text);
                for (const auto& [k, v] : relabel_json.items())
                    relabel[k] = v.get<std::string>();
                auto img = fuse_diagram({Jlab.empty() ? "J" : Jlab, {}}, d, relabel);
                std::cout << diagram_to_json(img).dump(2) << "\n";
                return 0;
            }
            if (*ses) {
                auto sub = load_decomposition(sub_file);
                auto mid = load_decomposition(mid_file);
                auto quot = load_decomposition(quot_file);
                exactness_transport(sub, mid, quot);
                std::cout << "length additivity and factor multisets consistent\n";
                return 0;
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

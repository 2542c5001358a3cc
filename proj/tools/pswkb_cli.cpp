// Command-line front end: energy tables, wave functions, Wigner fields and star-equation
// residual reports, with deterministic CSV/JSON output.

#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "pswkb/pswkb.hpp"

namespace {

using pswkb::json;

struct JobConfig {
    std::string potential = "harmonic"; // harmonic | poeschl_teller | linear | user_sampled
    pswkb::PhysParams params{};
    std::optional<unsigned> n;
    std::optional<double> k;
    unsigned order = 1;
    pswkb::RegionLayout layout{};
    double x_min = -8.0, x_max = 8.0;
    std::size_t n_x = 257;
    double p_min = -8.0, p_max = 8.0;
    std::size_t n_p = 257;
    std::string source = "exact"; // exact | wkb
    std::string component = "full";
    bool include_interference = true;
    bool emit_residuals = false;
    double core_x = 3.0, core_p = 3.0;
    double linear_v0 = 0.0, linear_slope = 1.0, linear_x_ref = 0.0;
    std::string samples_file;
    std::string out = "out.csv";
};

JobConfig load_config(const std::string& path) {
    JobConfig c;
    if (path.empty()) return c;
    std::ifstream is(path);
    if (!is) throw pswkb::config_error("cannot open config file: " + path);
    json j = json::parse(is, nullptr, true, true);
    if (j.contains("potential")) c.potential = j["potential"].get<std::string>();
    if (j.contains("params")) {
        const json& p = j["params"];
        if (p.contains("hbar")) c.params.hbar = p["hbar"].get<double>();
        if (p.contains("mass")) c.params.mass = p["mass"].get<double>();
        if (p.contains("omega")) c.params.omega = p["omega"].get<double>();
        if (p.contains("a")) c.params.a = p["a"].get<double>();
        if (p.contains("amplitude_re") || p.contains("amplitude_im"))
            c.params.amplitude = {p.value("amplitude_re", 1.0), p.value("amplitude_im", 0.0)};
    }
    if (j.contains("n")) c.n = j["n"].get<unsigned>();
    if (j.contains("k")) c.k = j["k"].get<double>();
    if (j.contains("order")) c.order = j["order"].get<unsigned>();
    if (j.contains("region_multipliers")) {
        const json& r = j["region_multipliers"];
        if (r.contains("forbidden_start")) c.layout.forbidden_start = r["forbidden_start"].get<double>();
        if (r.contains("patch_outer")) c.layout.patch_outer = r["patch_outer"].get<double>();
        if (r.contains("patch_inner")) c.layout.patch_inner = r["patch_inner"].get<double>();
        if (r.contains("allowed_end")) c.layout.allowed_end = r["allowed_end"].get<double>();
    }
    if (j.contains("grid")) {
        const json& g = j["grid"];
        c.x_min = g.value("x_min", c.x_min);
        c.x_max = g.value("x_max", c.x_max);
        c.n_x = g.value("n_x", c.n_x);
        c.p_min = g.value("p_min", c.p_min);
        c.p_max = g.value("p_max", c.p_max);
        c.n_p = g.value("n_p", c.n_p);
    }
    if (j.contains("source")) c.source = j["source"].get<std::string>();
    if (j.contains("component")) c.component = j["component"].get<std::string>();
    if (j.contains("include_interference")) c.include_interference = j["include_interference"].get<bool>();
    if (j.contains("emit_residuals")) c.emit_residuals = j["emit_residuals"].get<bool>();
    if (j.contains("core_x")) c.core_x = j["core_x"].get<double>();
    if (j.contains("core_p")) c.core_p = j["core_p"].get<double>();
    if (j.contains("linear_v0")) c.linear_v0 = j["linear_v0"].get<double>();
    if (j.contains("linear_slope")) c.linear_slope = j["linear_slope"].get<double>();
    if (j.contains("linear_x_ref")) c.linear_x_ref = j["linear_x_ref"].get<double>();
    if (j.contains("samples_file")) c.samples_file = j["samples_file"].get<std::string>();
    if (j.contains("out")) c.out = j["out"].get<std::string>();
    return c;
}

void parse_grid_override(const std::string& spec, JobConfig& c) {
    // x_min:x_max:n_x[,p_min:p_max:n_p]
    auto parse3 = [](const std::string& s, double& a, double& b, std::size_t& n) {
        const auto c1 = s.find(':'), c2 = s.rfind(':');
        if (c1 == std::string::npos || c2 == c1)
            throw pswkb::config_error("bad grid spec: " + s);
        a = std::stod(s.substr(0, c1));
        b = std::stod(s.substr(c1 + 1, c2 - c1 - 1));
        n = std::stoul(s.substr(c2 + 1));
    };
    const auto comma = spec.find(',');
    parse3(spec.substr(0, comma), c.x_min, c.x_max, c.n_x);
    if (comma != std::string::npos) parse3(spec.substr(comma + 1), c.p_min, c.p_max, c.n_p);
}

pswkb::PotentialModel build_model(const JobConfig& c) {
    pswkb::PhysParams p = c.params;
    if (c.k) p.k = *c.k;
    if (c.potential == "harmonic") {
        if (!c.n) throw pswkb::config_error("harmonic potential requires n");
        return pswkb::PotentialModel::harmonic(p);
    }
    if (c.potential == "poeschl_teller") {
        if (!c.k) throw pswkb::config_error("poeschl_teller potential requires k");
        return pswkb::PotentialModel::poeschl_teller(p);
    }
    if (c.potential == "linear")
        return pswkb::PotentialModel::linear(p, c.linear_v0, c.linear_slope, c.linear_x_ref);
    if (c.potential == "user_sampled") {
        if (c.samples_file.empty())
            throw pswkb::config_error("user_sampled potential requires samples_file");
        pswkb::FieldFile f = pswkb::read_field_csv(c.samples_file);
        if (f.rows.empty()) throw pswkb::config_error("empty samples file");
        std::vector<pswkb::cxd> v;
        for (const auto& r : f.rows) v.emplace_back(r.at(1), 0.0);
        pswkb::Grid1D g(f.rows.front().at(0), f.rows.back().at(0), f.rows.size());
        return pswkb::PotentialModel::sampled(p, pswkb::ComplexField1D(g, std::move(v)));
    }
    throw pswkb::config_error("unknown potential kind: " + c.potential);
}

json provenance(const JobConfig& c, const std::string& command) {
    json j;
    j["schema"] = 1;
    j["command"] = command;
    j["potential"] = c.potential;
    j["params"] = json{{"hbar", c.params.hbar},
                       {"mass", c.params.mass},
                       {"omega", c.params.omega},
                       {"a", c.params.a},
                       {"k", c.k ? *c.k : c.params.k},
                       {"amplitude_re", c.params.amplitude.real()},
                       {"amplitude_im", c.params.amplitude.imag()}};
    if (c.n) j["n"] = *c.n;
    j["order"] = c.order;
    j["source"] = c.source;
    return j;
}

std::vector<double> assembly_cuts(const pswkb::MatchedAssembly& a) {
    return {0.5 * (a.bL_lo + a.aL_hi), 0.5 * (a.c_lo + a.bL_hi), 0.5 * (a.bR_lo + a.c_hi),
            0.5 * (a.aR_lo + a.bR_hi)};
}

int cmd_energies(const JobConfig& c) {
    pswkb::PotentialModel model = build_model(c);
    if (!c.n) throw pswkb::config_error("energies: n required");
    std::vector<std::vector<double>> rows;
    for (unsigned m = 0; m <= *c.n; ++m)
        rows.push_back({double(m), pswkb::quantize_energy(model, m)});
    json h = provenance(c, "energies");
    h["columns"] = json::array({"n", "E"});
    pswkb::write_field_csv(c.out, h, rows);
    return 0;
}

pswkb::ComplexField1D compute_wave(const JobConfig& c, const pswkb::PotentialModel& model,
                                   const pswkb::Grid1D& grid, json* header) {
    pswkb::PhysParams p = model.params;
    if (c.source == "exact") {
        if (c.potential == "harmonic") return pswkb::ho_exact_wave(*c.n, p, grid);
        if (c.potential == "poeschl_teller") return pswkb::pt_exact_wave(p, grid);
        throw pswkb::config_error("exact wave only for harmonic / poeschl_teller");
    }
    if (c.source != "wkb") throw pswkb::config_error("source must be exact or wkb");
    if (c.potential == "poeschl_teller") {
        pswkb::PhaseSeries ph = pswkb::pt_wkb_phase(p, grid);
        std::vector<pswkb::cxd> v(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i)
            v[i] = std::exp(pswkb::cxd{0.0, 1.0} / p.hbar * ph.total_at(i));
        return pswkb::ComplexField1D(grid, std::move(v));
    }
    const double E = pswkb::quantize_energy(model, *c.n);
    pswkb::MatchedAssembly a = pswkb::match_coefficients(model, E, *c.n, c.order, c.layout);
    pswkb::ComplexField1D psi = pswkb::assemble_wavefunction(a, grid);
    if (header) {
        (*header)["energy"] = E;
        (*header)["fit_residual"] = a.diagnostics.fit_residual;
    }
    return psi;
}

int cmd_wave(const JobConfig& c) {
    pswkb::PotentialModel model = build_model(c);
    pswkb::Grid1D grid(c.x_min, c.x_max, c.n_x);
    json h = provenance(c, "wave");
    h["grid_x"] = pswkb::grid_to_json(grid);
    h["columns"] = json::array({"x", "re", "im"});
    pswkb::ComplexField1D psi = compute_wave(c, model, grid, &h);
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < grid.size(); ++i)
        rows.push_back({grid.node(i), psi.values[i].real(), psi.values[i].imag()});
    pswkb::write_field_csv(c.out, h, rows);
    return 0;
}

int cmd_wigner(const JobConfig& c) {
    pswkb::PotentialModel model = build_model(c);
    pswkb::Grid1D xg(c.x_min, c.x_max, c.n_x);
    pswkb::Grid1D pg(c.p_min, c.p_max, c.n_p);
    json h = provenance(c, "wigner");
    h["grid_x"] = pswkb::grid_to_json(xg);
    h["grid_p"] = pswkb::grid_to_json(pg);
    h["component"] = c.component;
    h["columns"] = json::array({"x", "p", "W"});

    std::optional<pswkb::RealField2D> W;
    if (c.source == "exact" && c.potential == "harmonic") {
        W = pswkb::ho_exact_wigner(*c.n, model.params, xg, pg);
        h["grid_sum"] = W->integral();
    } else if (c.source == "exact" && c.potential == "poeschl_teller") {
        pswkb::PhysParams p = model.params;
        pswkb::PtWignerField f = pswkb::pt_exact_wigner(p, xg, pg);
        h["delta_coefficient"] = f.delta_coefficient;
        h["delta_location"] = f.delta_location;
        h["pv_sampled_pointwise"] = true;
        pswkb::RealField2D sum(xg, pg);
        for (std::size_t i = 0; i < sum.values.size(); ++i)
            sum.values[i] =
                f.pv_term.values[i] + f.smooth_term.values[i] + f.residual_term.values[i];
        W = std::move(sum);
    } else if (c.source == "wkb" && c.potential == "harmonic") {
        const double E = pswkb::quantize_energy(model, *c.n);
        pswkb::MatchedAssembly a = pswkb::match_coefficients(model, E, *c.n, c.order, c.layout);
        const double x_span = 1.8 * a.layout.patch_outer * std::abs(a.x2);
        pswkb::Grid1D fine(-x_span, x_span, 2048);
        pswkb::ComplexField1D psi = pswkb::assemble_wavefunction(a, fine);
        h["energy"] = E;
        pswkb::WignerComponent comp = pswkb::WignerComponent::full;
        if (c.component == "no-interference") comp = pswkb::WignerComponent::no_interference;
        else if (c.component == "interference") comp = pswkb::WignerComponent::interference;
        else if (c.component != "full") throw pswkb::config_error("unknown component");
        W = pswkb::component_wigner(psi, assembly_cuts(a), model.params, xg, pg, comp);
    } else {
        throw pswkb::config_error("unsupported source/potential combination for wigner");
    }

    std::vector<std::vector<double>> rows;
    rows.reserve(xg.size() * pg.size());
    for (std::size_t i = 0; i < xg.size(); ++i)
        for (std::size_t j = 0; j < pg.size(); ++j)
            rows.push_back({xg.node(i), pg.node(j), W->at(i, j)});
    pswkb::write_field_csv(c.out, h, rows);
    return 0;
}

int cmd_residual(const JobConfig& c) {
    pswkb::PotentialModel model = build_model(c);
    if (c.potential != "harmonic")
        throw pswkb::config_error("residual: polynomial-in-p Hamiltonian required (harmonic)");
    pswkb::Grid1D xg(c.x_min, c.x_max, c.n_x);
    pswkb::Grid1D pg(c.p_min, c.p_max, c.n_p);
    std::optional<pswkb::RealField2D> W;
    double E = 0.0;
    if (c.source == "exact") {
        E = model.params.hbar * model.params.omega * (double(*c.n) + 0.5);
        W = pswkb::ho_exact_wigner(*c.n, model.params, xg, pg);
    } else {
        E = pswkb::quantize_energy(model, *c.n);
        pswkb::MatchedAssembly a = pswkb::match_coefficients(model, E, *c.n, c.order, c.layout);
        const double x_span = 1.8 * a.layout.patch_outer * std::abs(a.x2);
        pswkb::Grid1D fine(-x_span, x_span, 2048);
        pswkb::ComplexField1D psi = pswkb::assemble_wavefunction(a, fine);
        W = pswkb::wigner_transform(psi, model.params, xg, pg);
    }
    pswkb::PolySymbol H = pswkb::ho_hamiltonian_symbol(model.params);
    auto rep = pswkb::star_eigen_residual(H, *W, E, model.params, c.core_x, c.core_p,
                                          model.params.omega);
    json j;
    j["r_eigen"] = rep.r_eigen;
    j["r_bracket"] = rep.r_bracket;
    j["energy"] = E;
    j["grid_x"] = pswkb::grid_to_json(xg);
    j["grid_p"] = pswkb::grid_to_json(pg);
    j["core_x"] = c.core_x;
    j["core_p"] = c.core_p;
    std::ofstream os(c.out, std::ios::binary);
    if (!os) throw pswkb::config_error("cannot open output file: " + c.out);
    os << j.dump(2) << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"phase-space WKB toolkit"};
    app.require_subcommand(1);

    std::string config_path, grid_spec, out_override, source_override, component_override,
        potential_override;
    std::optional<unsigned> n_override, order_override;
    std::optional<double> k_override;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "job configuration JSON");
        sub->add_option("--potential", potential_override, "potential kind override");
        sub->add_option("--n", n_override, "quantum number override");
        sub->add_option("--k", k_override, "wave number override");
        sub->add_option("--order", order_override, "WKB order K override");
        sub->add_option("--grid", grid_spec, "x_min:x_max:n_x[,p_min:p_max:n_p]");
        sub->add_option("--source", source_override, "wkb|exact");
        sub->add_option("--component", component_override, "full|no-interference|interference");
        sub->add_option("--out", out_override, "output path override");
    };

    CLI::App* energies = app.add_subcommand("energies", "WKB quantisation energy table");
    CLI::App* wave = app.add_subcommand("wave", "wave function samples");
    CLI::App* wigner = app.add_subcommand("wigner", "Wigner field samples");
    CLI::App* residual = app.add_subcommand("residual", "star-equation residual report");
    for (CLI::App* s : {energies, wave, wigner, residual}) add_common(s);

    CLI11_PARSE(app, argc, argv);

    try {
        JobConfig c = load_config(config_path);
        if (!potential_override.empty()) c.potential = potential_override;
        if (n_override) c.n = *n_override;
        if (k_override) c.k = *k_override;
        if (order_override) c.order = *order_override;
        if (!grid_spec.empty()) parse_grid_override(grid_spec, c);
        if (!source_override.empty()) c.source = source_override;
        if (!component_override.empty()) c.component = component_override;
        if (!out_override.empty()) c.out = out_override;
        if (c.order > pswkb::kMaxWkbOrder) throw pswkb::config_error("order K must be <= 4");

        if (app.got_subcommand(energies)) return cmd_energies(c);
        if (app.got_subcommand(wave)) return cmd_wave(c);
        if (app.got_subcommand(wigner)) return cmd_wigner(c);
        if (app.got_subcommand(residual)) return cmd_residual(c);
        return 2;
    } catch (const pswkb::matching_error& e) {
        std::cerr << "error-token: matching-failure; " << e.what() << "\n";
        return 3;
    } catch (const pswkb::quantization_error& e) {
        std::cerr << "error-token: quantization-failure; " << e.what() << "\n";
        return 3;
    } catch (const pswkb::numerical_error& e) {
        std::cerr << "error-token: numerical-failure; " << e.what() << "\n";
        return 3;
    } catch (const pswkb::coverage_error& e) {
        std::cerr << "error-token: coverage-error; " << e.what() << "\n";
        return 2;
    } catch (const pswkb::precondition_error& e) {
        std::cerr << "error-token: config-error; " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error-token: internal-error; " << e.what() << "\n";
        return 3;
    }
}

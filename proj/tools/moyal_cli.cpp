// Batch front door: Wigner field export, symbolic star-product evaluation,
// evolution runs from JSON configs, and the verification suites.
// Exit codes: 0 success, 1 verification failure, 2 usage/config error.

#include "moyal/dynamics.hpp"
#include "moyal/io.hpp"
#include "moyal/parser.hpp"
#include "moyal/phasespace.hpp"
#include "moyal/states.hpp"
#include "moyal/verify.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace moyal;

namespace {

constexpr int kExitVerifyFailure = 1;
constexpr int kExitUsage = 2;

void reject_unknown_keys(const json& j, const std::vector<std::string>& known,
                         const std::string& where) {
    for (const auto& [key, value] : j.items())
        if (std::find(known.begin(), known.end(), key) == known.end())
            throw Error("config: unknown key '" + key + "' in " + where);
}

// "n=256,L=20" -> GridSpec (hbar supplied separately)
GridSpec parse_grid(const std::string& text, double hbar) {
    int n = 256;
    double length = 20.0;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos)
            throw Error("grid: expected key=value, got '" + item + "'");
        std::string key = item.substr(0, eq), val = item.substr(eq + 1);
        if (key == "n")
            n = std::stoi(val);
        else if (key == "L")
            length = std::stod(val);
        else
            throw Error("grid: unknown key '" + key + "'");
    }
    return GridSpec(n, length, hbar);
}

std::vector<double> read_potential_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("config: cannot open potential table " + path);
    std::vector<double> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        // accept either bare values or the profile format `x,value`
        auto comma = line.find_last_of(',');
        std::string field =
            comma == std::string::npos ? line : line.substr(comma + 1);
        try {
            out.push_back(std::stod(field));
        } catch (const std::exception&) {
            if (out.empty()) continue;  // header line
            throw Error("config: bad potential table line '" + line + "'");
        }
    }
    return out;
}

struct RunConfig {
    std::string state;
    GridSpec grid;
    dynamics::HamiltonianSpec hamiltonian;
    dynamics::EvolutionConfig evolution;
    std::string output_dir;
};

RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("config: cannot open " + path);
    json j = json::parse(in);
    reject_unknown_keys(
        j, {"state", "grid", "hamiltonian", "evolution", "output_dir"},
        "config root");

    RunConfig cfg;
    cfg.state = j.at("state").get<std::string>();
    reject_unknown_keys(j.at("grid"), {"n", "length", "hbar"}, "grid");
    cfg.grid = io::grid_from_json(j.at("grid"));

    const json& h = j.at("hamiltonian");
    reject_unknown_keys(h, {"mass", "potential", "potential_table"},
                        "hamiltonian");
    double mass = h.value("mass", 1.0);
    if (h.contains("potential") && h.contains("potential_table"))
        throw Error("config: give either potential or potential_table");
    if (h.contains("potential_table")) {
        cfg.hamiltonian.mass = mass;
        cfg.hamiltonian.table =
            read_potential_table(h.at("potential_table").get<std::string>());
    } else {
        cfg.hamiltonian = dynamics::HamiltonianSpec::from_coefficients(
            h.value("potential", std::vector<double>{}), mass);
    }

    if (j.contains("evolution")) {
        const json& e = j.at("evolution");
        reject_unknown_keys(e, {"dt", "steps", "record_every", "scheme"},
                            "evolution");
        cfg.evolution.dt = e.value("dt", 1e-3);
        cfg.evolution.steps = e.value("steps", 1000);
        cfg.evolution.record_every = e.value("record_every", 100);
        std::string scheme = e.value("scheme", "split-step");
        if (scheme == "split-step")
            cfg.evolution.scheme = dynamics::Scheme::SplitStep;
        else if (scheme == "rk4-series")
            cfg.evolution.scheme = dynamics::Scheme::Rk4Series;
        else
            throw Error("config: unknown scheme '" + scheme + "'");
    }
    cfg.evolution.validate();
    cfg.output_dir = j.value("output_dir", "out");

    cfg.grid.validate();
    cfg.hamiltonian.validate(cfg.grid);
    return cfg;
}

json hamiltonian_json(const dynamics::HamiltonianSpec& H) {
    json out{{"mass", H.mass}};
    if (H.tabulated()) {
        out["potential_table_size"] = H.table.size();
    } else {
        std::vector<double> coeffs(7, 0.0);
        int top = 0;
        for (const auto& [mono, coef] : H.potential.terms()) {
            coeffs[mono.kx] = static_cast<double>(coef.re);
            top = std::max(top, int(mono.kx));
        }
        coeffs.resize(top + 1);
        out["potential"] = coeffs;
    }
    return out;
}

std::string snapshot_name(const std::string& engine, int index) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s_%04d.csv", engine.c_str(), index);
    return buf;
}

void write_state_csv(const std::string& path, const WaveFunction& psi) {
    // same atomic/precision conventions as the field writers
    std::string tmp = path + ".tmp";
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw Error("io: cannot open " + tmp);
    out << "x,re,im\n";
    char buf[128];
    for (int j = 0; j < psi.grid.n; ++j) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", psi.grid.x(j),
                      psi.values[j].real(), psi.values[j].imag());
        out << buf;
    }
    out.flush();
    if (!out) throw Error("io: write to " + tmp + " failed");
    out.close();
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw Error("io: cannot rename " + tmp + " to " + path);
}

double rel_l2(const PhaseSpaceField& a, const PhaseSpaceField& b) {
    double num = 0.0, den = 0.0;
    for (size_t i = 0; i < a.values.size(); ++i) {
        num += std::norm(a.values[i] - b.values[i]);
        den += std::norm(b.values[i]);
    }
    return std::sqrt(num / den);
}

int cmd_wigner(const std::string& state, const std::string& grid_text,
               double hbar, const std::string& out_path, bool marginals,
               bool negativity) {
    GridSpec g = parse_grid(grid_text, hbar);
    WaveFunction psi = states::state_factory(state, g);
    PhaseSpaceField F = phasespace::wigner(psi);
    io::write_field_csv(out_path, F);

    json side = io::sidecar(g, F.time);
    side["state"] = state;
    side["output"] = out_path;
    if (negativity) {
        phasespace::Negativity neg = phasespace::negativity(F);
        side["negativity"] = {{"min_value", neg.min_value},
                              {"x", neg.x},
                              {"p", neg.p},
                              {"negative_mass", neg.negative_mass}};
    }
    if (marginals) {
        auto mg = phasespace::marginals(F);
        std::vector<double> xs(g.n), ps(g.n);
        for (int j = 0; j < g.n; ++j) xs[j] = g.x(j);
        for (int k = 0; k < g.n; ++k) ps[k] = g.p(k);
        io::write_profile_csv(out_path + ".xmarg.csv", "x", xs, mg.position);
        io::write_profile_csv(out_path + ".pmarg.csv", "p", ps, mg.momentum);
        side["marginals"] = {out_path + ".xmarg.csv", out_path + ".pmarg.csv"};
    }
    io::write_json(out_path + ".json", side);
    return 0;
}

int cmd_star(const std::string& expr, bool hbar_symbolic, double hbar,
             int truncate) {
    symcalc::PolySymbol a = symcalc::eval_text(expr);
    if (truncate >= 0) a = symcalc::truncate_order(a, unsigned(truncate));
    if (hbar_symbolic)
        std::cout << symcalc::format_symbol(a) << "\n";
    else
        std::cout << symcalc::format_numeric(symcalc::to_numeric(a, hbar))
                  << "\n";
    return 0;
}

int cmd_evolve(const std::string& config_path, const std::string& engine) {
    RunConfig cfg = load_run_config(config_path);
    fs::create_directories(cfg.output_dir);
    WaveFunction psi0 = states::state_factory(cfg.state, cfg.grid);
    if (!states::boundary_decay_ok(psi0))
        throw Error("evolve: state has not decayed at the box boundary");

    json manifest = io::sidecar(cfg.grid, 0.0);
    manifest["state"] = cfg.state;
    manifest["hamiltonian"] = hamiltonian_json(cfg.hamiltonian);
    manifest["evolution"] = {
        {"dt", cfg.evolution.dt},
        {"steps", cfg.evolution.steps},
        {"record_every", cfg.evolution.record_every},
        {"scheme", cfg.evolution.scheme == dynamics::Scheme::SplitStep
                       ? "split-step"
                       : "rk4-series"}};
    manifest["engine"] = engine;

    bool want_schro = engine == "schrodinger" || engine == "all";
    bool want_moyal = engine == "moyal" || engine == "all";
    bool want_classical = engine == "classical" || engine == "all";
    if (!want_schro && !want_moyal && !want_classical)
        throw Error("evolve: unknown engine '" + engine +
                    "' (expected moyal|schrodinger|classical|all)");

    std::vector<WaveFunction> oracle;
    if (want_schro)
        oracle = dynamics::schrodinger_evolve(psi0, cfg.hamiltonian,
                                              cfg.evolution);
    std::vector<PhaseSpaceField> moyal_series, classical_series;
    PhaseSpaceField F0 = phasespace::wigner(psi0);
    if (want_moyal)
        moyal_series = dynamics::moyal_evolve(F0, cfg.hamiltonian,
                                              cfg.evolution);
    if (want_classical)
        classical_series = dynamics::classical_liouville_evolve(
            F0, cfg.hamiltonian, cfg.evolution);

    json times = json::array(), conserved = json::array();
    PhaseSpaceField Hs =
        dynamics::hamiltonian_symbol(cfg.hamiltonian, cfg.grid);
    size_t count = want_moyal ? moyal_series.size()
                   : want_classical ? classical_series.size()
                                    : oracle.size();
    for (size_t i = 0; i < count; ++i) {
        json entry;
        if (want_moyal) {
            const PhaseSpaceField& F = moyal_series[i];
            io::write_field_csv(
                (fs::path(cfg.output_dir) / snapshot_name("moyal", int(i)))
                    .string(),
                F);
            entry["time"] = F.time;
            double mass = 0.0;
            for (const cplx& v : F.values) mass += v.real();
            entry["moyal"] = {
                {"mass", mass * cfg.grid.dx() * cfg.grid.dp()},
                {"energy", phasespace::expectation(F, Hs).real()},
                {"purity", phasespace::purity(F)}};
        }
        if (want_classical) {
            const PhaseSpaceField& F = classical_series[i];
            io::write_field_csv(
                (fs::path(cfg.output_dir) / snapshot_name("classical", int(i)))
                    .string(),
                F);
            entry["time"] = F.time;
            double mass = 0.0;
            for (const cplx& v : F.values) mass += v.real();
            entry["classical"] = {
                {"mass", mass * cfg.grid.dx() * cfg.grid.dp()},
                {"energy", phasespace::expectation(F, Hs).real()}};
        }
        if (want_schro) {
            const WaveFunction& p = oracle[i];
            write_state_csv(
                (fs::path(cfg.output_dir) / snapshot_name("psi", int(i)))
                    .string(),
                p);
            entry["time"] = p.time;
            entry["schrodinger"] = {
                {"norm", p.norm2()},
                {"energy", dynamics::energy_expectation(p, cfg.hamiltonian)}};
        }
        times.push_back(entry["time"]);
        conserved.push_back(entry);
    }
    manifest["times"] = times;
    manifest["conserved"] = conserved;

    if (engine == "all") {
        json divergence = json::array();
        double worst_oracle = 0.0;
        for (size_t i = 0; i < count; ++i) {
            double mo = rel_l2(moyal_series[i], phasespace::wigner(oracle[i]));
            double mc = rel_l2(moyal_series[i], classical_series[i]);
            worst_oracle = std::max(worst_oracle, mo);
            divergence.push_back({{"time", moyal_series[i].time},
                                  {"moyal_vs_oracle", mo},
                                  {"moyal_vs_classical", mc}});
        }
        manifest["divergence"] = divergence;
        manifest["max_moyal_vs_oracle"] = worst_oracle;
    }
    io::write_json((fs::path(cfg.output_dir) / "manifest.json").string(),
                   manifest);
    return 0;
}

int cmd_verify(const std::string& suite, const std::string& report_path,
               unsigned seed, bool wrong_sign_q) {
    verify::VerifyOptions opt;
    opt.seed = seed;
    if (wrong_sign_q) opt.q_sign = -1.0;
    std::vector<verify::SuiteReport> reports = verify::run_suites(suite, opt);
    if (!report_path.empty())
        io::write_json(report_path, verify::reports_json(reports));
    bool ok = true;
    for (const verify::SuiteReport& r : reports) {
        for (const verify::CheckResult& c : r.checks)
            std::cout << (c.passed ? "pass" : "FAIL") << "  " << r.suite << "."
                      << c.name << "  measured=" << c.measured
                      << " tolerance=" << c.tolerance << "\n";
        ok = ok && r.all_passed();
    }
    std::cout << (ok ? "verify: all checks passed\n"
                     : "verify: FAILURES detected\n");
    return ok ? 0 : kExitVerifyFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"phase-space quantum mechanics toolkit"};
    app.require_subcommand(1);

    auto* wigner = app.add_subcommand("wigner", "compute a Wigner field");
    std::string state, grid_text = "n=256,L=20", out_path = "wigner.csv";
    double hbar = 1.0;
    bool marginals = false, negativity = false;
    wigner->add_option("--state", state, "state descriptor")->required();
    wigner->add_option("--grid", grid_text, "grid, e.g. n=256,L=20");
    wigner->add_option("--hbar", hbar, "Planck constant");
    wigner->add_option("--out", out_path, "output CSV path");
    wigner->add_flag("--marginals", marginals, "also write marginal profiles");
    wigner->add_flag("--negativity", negativity,
                     "report negativity in the sidecar");

    auto* star = app.add_subcommand("star", "evaluate a symbol expression");
    std::string expr;
    bool hbar_symbolic = false;
    double star_hbar = 1.0;
    int truncate = -1;
    star->add_option("--expr", expr, "expression, e.g. star(x,p)-star(p,x)")
        ->required();
    star->add_flag("--hbar-symbolic", hbar_symbolic,
                   "keep hbar as a formal symbol");
    star->add_option("--hbar", star_hbar, "numeric value for hbar");
    star->add_option("--truncate", truncate, "drop hbar orders above n");

    auto* evolve = app.add_subcommand("evolve", "run an evolution from config");
    std::string config_path, engine = "moyal";
    evolve->add_option("--config", config_path, "JSON run config")->required();
    evolve->add_option("--engine", engine,
                       "moyal|schrodinger|classical|all");

    auto* verify_cmd = app.add_subcommand("verify", "run verification suites");
    std::string suite = "all", report_path;
    unsigned seed = 20250901;
    bool wrong_sign_q = false;
    verify_cmd->add_option("--suite", suite, "algebra|transform|dynamics|all");
    verify_cmd->add_option("--report", report_path, "JSON report path");
    verify_cmd->add_option("--seed", seed, "RNG seed for random identities");
    verify_cmd->add_flag("--wrong-sign-q", wrong_sign_q,
                         "flip the quantum-potential sign (tripwire demo)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (wigner->parsed())
            return cmd_wigner(state, grid_text, hbar, out_path, marginals,
                              negativity);
        if (star->parsed())
            return cmd_star(expr, hbar_symbolic, star_hbar, truncate);
        if (evolve->parsed()) return cmd_evolve(config_path, engine);
        if (verify_cmd->parsed())
            return cmd_verify(suite, report_path, seed, wrong_sign_q);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

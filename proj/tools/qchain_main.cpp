// Command-line surface: basis inspection, relation verification,
// rotator spectra, chain spectra, level fitting and classical-limit
// tables. Output is deterministic: identical invocations produce
// byte-identical bytes.
//
// Exit codes: 0 success / all relations pass, 1 verification failure,
// 2 usage or domain error, 3 I/O error.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <memory>
#include <sstream>
#include <string>

#include "qchain/algebra.hpp"
#include "qchain/chains.hpp"
#include "qchain/fock.hpp"
#include "qchain/qnum.hpp"
#include "qchain/spectra.hpp"

using json = nlohmann::ordered_json;
using namespace qchain;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

std::string fmt(double v, const char* spec = "%.12g") {
    char buf[64];
    std::snprintf(buf, sizeof(buf), spec, v);
    return buf;
}

std::string fmt_residual(double v) { return fmt(v, "%.6e"); }

struct OutputSink {
    std::string path;  // empty = stdout

    int write(const std::string& content) const {
        if (path.empty()) {
            std::cout << content;
            return kExitOk;
        }
        std::ofstream out(path, std::ios::binary);
        if (!out) {
            std::cerr << "error: cannot open output file: " << path << "\n";
            return kExitIo;
        }
        out << content;
        if (!out.good()) {
            std::cerr << "error: write failed: " << path << "\n";
            return kExitIo;
        }
        return kExitOk;
    }
};

struct QSpec {
    double q_real = 0.0;
    double tau = 0.0;
    bool has_q = false;
    bool has_tau = false;

    DeformationParameter resolve() const {
        if (has_q == has_tau)
            throw std::invalid_argument("exactly one of --q or --tau is required");
        return has_q ? DeformationParameter::real_q(q_real) : DeformationParameter::phase(tau);
    }
};

void add_q_options(CLI::App* cmd, QSpec& spec) {
    auto* q_opt = cmd->add_option("--q", spec.q_real, "real deformation parameter q > 0");
    auto* tau_opt = cmd->add_option("--tau", spec.tau, "phase angle tau, q = exp(i tau)");
    q_opt->excludes(tau_opt);
    tau_opt->excludes(q_opt);
    cmd->callback([&spec, q_opt, tau_opt] {
        spec.has_q = q_opt->count() > 0;
        spec.has_tau = tau_opt->count() > 0;
    });
}

json report_to_json(const RelationReport& report) {
    json out;
    out["subject"] = report.subject;
    out["tolerance"] = report.tolerance;
    out["notes"] = report.notes;
    json relations = json::array();
    for (const auto& e : report.entries)
        relations.push_back(
            {{"id", e.id}, {"residual", e.residual}, {"status", e.pass ? "pass" : "FAIL"}});
    out["relations"] = relations;
    out["max_residual"] = report.max_residual();
    out["all_pass"] = report.all_pass();
    return out;
}

// ----------------------------------------------------------------- basis

int cmd_basis(int modes, int total, const std::string& output, const OutputSink& sink) {
    FockBasis basis(modes, total);
    std::string text;
    if (output == "json") {
        json states = json::array();
        for (int i = 0; i < basis.dim(); ++i) {
            const auto s = basis.state(i);
            states.push_back(std::vector<int>(s.begin(), s.end()));
        }
        json out = {{"modes", modes}, {"total", total}, {"dimension", basis.dim()}, {"states", states}};
        text = out.dump(2) + "\n";
    } else {
        std::ostringstream os;
        for (int i = 0; i < basis.dim(); ++i) {
            os << i << ":";
            for (int n : basis.state(i)) os << " " << n;
            os << "\n";
        }
        text = os.str();
    }
    return sink.write(text);
}

// ----------------------------------------------------------------- verify

int cmd_verify(const std::string& chain_name, const DeformationParameter& q, int total, double tol,
               const std::string& output, const OutputSink& sink) {
    RelationReport report;
    if (chain_name == "glq6") {
        FockBasis basis(6, total);
        const auto glq6 = build_glq(basis, q);
        report.subject = "glq6";
        report.tolerance = tol;
        report.merge(check_chevalley(glq6, q, tol));
        report.merge(check_serre(glq6, q, tol));
    } else {
        auto basis = std::make_shared<FockBasis>(6, total);
        const auto chain = build_chain(parse_chain_kind(chain_name), basis, q);
        report = check_chain(chain, q, tol);
    }
    const std::string text =
        output == "json" ? report_to_json(report).dump(2) + "\n" : report_text(report);
    const int rc = sink.write(text);
    if (rc != kExitOk) return rc;
    return report.all_pass() ? kExitOk : kExitVerifyFail;
}

// ----------------------------------------------------------------- rotator

int cmd_rotator(const DeformationParameter& q, double K, int jmax, const std::string& output,
                const OutputSink& sink) {
    std::vector<double> js;
    for (int j = 0; j <= jmax; ++j) js.push_back(j);
    const auto spectrum = rotator_spectrum(K, q, js);
    std::string text;
    if (output == "json") {
        json levels = json::array();
        for (const auto& [j, e] : spectrum) levels.push_back({{"j", j}, {"energy", e}});
        text = json{{"K", K}, {"levels", levels}}.dump(2) + "\n";
    } else {
        std::ostringstream os;
        os << "j,energy\n";
        for (const auto& [j, e] : spectrum) os << fmt(j) << "," << fmt(e) << "\n";
        text = os.str();
    }
    return sink.write(text);
}

// ----------------------------------------------------------------- spectrum

int cmd_spectrum(const std::string& chain_name, const DeformationParameter& q, int total,
                 const std::vector<std::string>& term_args, bool symmetrized,
                 const std::string& output, const OutputSink& sink) {
    std::vector<HamiltonianTerm> terms;
    for (const auto& arg : term_args) {
        const auto eq = arg.rfind('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("term must have the form <invariant-id>=<coefficient>: " + arg);
        terms.push_back(HamiltonianTerm{arg.substr(0, eq), std::stod(arg.substr(eq + 1))});
    }
    auto basis = std::make_shared<FockBasis>(6, total);
    const auto kind = parse_chain_kind(chain_name);
    const auto build = [&](const DeformationParameter& param) {
        return build_hamiltonian(build_chain(kind, basis, param), terms);
    };
    const Operator h = symmetrized ? symmetrize(build, q) : build(q);
    const auto levels = eigenlevels(h);

    std::string text;
    if (output == "json") {
        json out = json::array();
        for (const auto& level : levels)
            out.push_back({{"energy", level.value}, {"multiplicity", level.multiplicity}});
        text = out.dump(2) + "\n";
    } else {
        std::ostringstream os;
        os << "energy,multiplicity\n";
        for (const auto& level : levels) os << fmt(level.value) << "," << level.multiplicity << "\n";
        text = os.str();
    }
    return sink.write(text);
}

// ----------------------------------------------------------------- fit

LevelScheme parse_levels(const std::string& path, int* io_error) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        *io_error = 1;
        return {};
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::string content = buffer.str();

    LevelScheme scheme;
    const auto first = content.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && (content[first] == '[' || content[first] == '{')) {
        json parsed = json::parse(content);
        const json& records = parsed.is_object() ? parsed.at("levels") : parsed;
        for (const auto& record : records) {
            Level level;
            level.j = record.at("j").get<double>();
            level.energy = record.at("energy").get<double>();
            level.weight = record.value("weight", 1.0);
            scheme.levels.push_back(level);
        }
    } else {
        std::istringstream lines(content);
        std::string line;
        while (std::getline(lines, line)) {
            const auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            std::istringstream fields(line);
            Level level;
            if (!(fields >> level.j)) continue;  // blank or comment line
            if (!(fields >> level.energy))
                throw std::invalid_argument("levels file: line needs at least j and energy: " + line);
            if (!(fields >> level.weight)) level.weight = 1.0;
            scheme.levels.push_back(level);
        }
    }
    scheme.validate();
    return scheme;
}

int cmd_fit(const std::string& levels_path, const std::string& output, const OutputSink& sink) {
    int io_error = 0;
    LevelScheme scheme;
    try {
        scheme = parse_levels(levels_path, &io_error);
    } catch (const json::exception& e) {
        std::cerr << "error: cannot parse levels file: " << e.what() << "\n";
        return kExitUsage;
    }
    if (io_error) {
        std::cerr << "error: cannot read levels file: " << levels_path << "\n";
        return kExitIo;
    }
    const FitResult fit = fit_rotator(scheme);

    std::string text;
    if (output == "json") {
        json residuals = json::array();
        for (std::size_t i = 0; i < scheme.levels.size(); ++i)
            residuals.push_back({{"j", scheme.levels[i].j},
                                 {"energy", scheme.levels[i].energy},
                                 {"residual", fit.residuals[i]}});
        text = json{{"K", fit.K}, {"tau", fit.tau}, {"rms", fit.rms}, {"levels", residuals}}.dump(2) +
               "\n";
    } else {
        std::ostringstream os;
        os << "K=" << fmt(fit.K) << "\n";
        os << "tau=" << fmt(fit.tau) << "\n";
        os << "rms=" << fmt_residual(fit.rms) << "\n";
        os << "j energy residual\n";
        for (std::size_t i = 0; i < scheme.levels.size(); ++i)
            os << fmt(scheme.levels[i].j) << " " << fmt(scheme.levels[i].energy) << " "
               << fmt_residual(fit.residuals[i]) << "\n";
        text = os.str();
    }
    return sink.write(text);
}

// ----------------------------------------------------------------- limit

int cmd_limit(const std::string& chain_name, int total, const std::string& eps_csv,
              const std::string& output, const OutputSink& sink) {
    std::vector<double> eps;
    std::istringstream fields(eps_csv);
    std::string token;
    while (std::getline(fields, token, ',')) eps.push_back(std::stod(token));

    auto basis = std::make_shared<FockBasis>(6, total);
    const auto table = classical_limit_check(parse_chain_kind(chain_name), basis, eps);

    std::string text;
    if (output == "json") {
        json rows = json::array();
        for (const auto& row : table.rows)
            rows.push_back({{"generator", row.generator}, {"eps", row.eps}, {"distance", row.distance}});
        text = json{{"rows", rows}, {"scaling_violations", table.scaling_violations}}.dump(2) + "\n";
    } else {
        std::ostringstream os;
        os << "generator,epsilon,distance\n";
        for (const auto& row : table.rows)
            os << row.generator << "," << fmt(row.eps) << "," << fmt_residual(row.distance) << "\n";
        text = os.str();
    }
    const int rc = sink.write(text);
    if (rc != kExitOk) return rc;
    for (const auto& v : table.scaling_violations) std::cerr << "scaling violation: " << v << "\n";
    return table.scaling_violations.empty() ? kExitOk : kExitVerifyFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite-dimensional realizations of q-deformed algebras on boson sectors"};
    app.require_subcommand(1);

    // basis
    auto* basis_cmd = app.add_subcommand("basis", "dump a Fock sector, one occupation tuple per line");
    int basis_modes = 0, basis_total = 0;
    std::string basis_output = "text";
    OutputSink basis_sink;
    basis_cmd->add_option("--modes", basis_modes, "number of modes")->required();
    basis_cmd->add_option("--total", basis_total, "total boson number")->required();
    basis_cmd->add_option("--output", basis_output, "text|json")
        ->check(CLI::IsMember({"text", "json"}));
    basis_cmd->add_option("--out", basis_sink.path, "write to file instead of stdout");

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "verify defining relations of a realization");
    std::string verify_chain;
    int verify_total = 0;
    double verify_tol = 1e-9;
    QSpec verify_q;
    std::string verify_output = "text";
    OutputSink verify_sink;
    verify_cmd->add_option("--chain", verify_chain, "vibrational|rotational|gamma|glq6")->required();
    verify_cmd->add_option("--total", verify_total, "total boson number")->required();
    verify_cmd->add_option("--tol", verify_tol, "residual tolerance (default 1e-9)");
    add_q_options(verify_cmd, verify_q);
    verify_cmd->add_option("--output", verify_output, "text|json")
        ->check(CLI::IsMember({"text", "json"}));
    verify_cmd->add_option("--out", verify_sink.path, "write to file instead of stdout");

    // rotator
    auto* rotator_cmd = app.add_subcommand("rotator", "deformed rigid-rotator spectrum");
    double rotator_k = 1.0;
    int rotator_jmax = 10;
    QSpec rotator_q;
    std::string rotator_output = "csv";
    OutputSink rotator_sink;
    rotator_cmd->add_option("--K", rotator_k, "energy scale K")->required();
    rotator_cmd->add_option("--jmax", rotator_jmax, "largest angular momentum")->required();
    add_q_options(rotator_cmd, rotator_q);
    rotator_cmd->add_option("--output", rotator_output, "csv|json")
        ->check(CLI::IsMember({"csv", "json"}));
    rotator_cmd->add_option("--out", rotator_sink.path, "write to file instead of stdout");

    // spectrum
    auto* spectrum_cmd = app.add_subcommand("spectrum", "eigenlevels of a chain Hamiltonian");
    std::string spectrum_chain;
    int spectrum_total = 0;
    std::vector<std::string> spectrum_terms;
    bool spectrum_symmetrize = false;
    QSpec spectrum_q;
    std::string spectrum_output = "csv";
    OutputSink spectrum_sink;
    spectrum_cmd->add_option("--chain", spectrum_chain, "vibrational|rotational|gamma")->required();
    spectrum_cmd->add_option("--total", spectrum_total, "total boson number")->required();
    spectrum_cmd->add_option("--term", spectrum_terms,
                             "invariant term <id>=<coefficient>; repeatable "
                             "(so3q_casimir, so3_casimir_classical, <sub>_casimir_classical, poly:...)");
    spectrum_cmd->add_flag("--symmetrize", spectrum_symmetrize,
                           "average the builds at q and 1/q (restores self-adjointness for phase q)");
    add_q_options(spectrum_cmd, spectrum_q);
    spectrum_cmd->add_option("--output", spectrum_output, "csv|json")
        ->check(CLI::IsMember({"csv", "json"}));
    spectrum_cmd->add_option("--out", spectrum_sink.path, "write to file instead of stdout");

    // fit
    auto* fit_cmd = app.add_subcommand("fit", "fit (K, tau) to an energy-level file");
    std::string fit_levels;
    std::string fit_output = "text";
    OutputSink fit_sink;
    fit_cmd->add_option("--levels", fit_levels, "levels file (JSON or 'j energy [weight]' lines)")
        ->required();
    fit_cmd->add_option("--output", fit_output, "text|json")->check(CLI::IsMember({"text", "json"}));
    fit_cmd->add_option("--out", fit_sink.path, "write to file instead of stdout");

    // limit
    auto* limit_cmd = app.add_subcommand("limit", "classical-limit convergence table");
    std::string limit_chain;
    int limit_total = 0;
    std::string limit_eps = "1e-2,1e-3,1e-4";
    std::string limit_output = "csv";
    OutputSink limit_sink;
    limit_cmd->add_option("--chain", limit_chain, "vibrational|rotational|gamma")->required();
    limit_cmd->add_option("--total", limit_total, "total boson number")->required();
    limit_cmd->add_option("--eps", limit_eps, "comma-separated decreasing eps list");
    limit_cmd->add_option("--output", limit_output, "csv|json")
        ->check(CLI::IsMember({"csv", "json"}));
    limit_cmd->add_option("--out", limit_sink.path, "write to file instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (basis_cmd->parsed()) return cmd_basis(basis_modes, basis_total, basis_output, basis_sink);
        if (verify_cmd->parsed())
            return cmd_verify(verify_chain, verify_q.resolve(), verify_total, verify_tol,
                              verify_output, verify_sink);
        if (rotator_cmd->parsed())
            return cmd_rotator(rotator_q.resolve(), rotator_k, rotator_jmax, rotator_output,
                               rotator_sink);
        if (spectrum_cmd->parsed())
            return cmd_spectrum(spectrum_chain, spectrum_q.resolve(), spectrum_total, spectrum_terms,
                                spectrum_symmetrize, spectrum_output, spectrum_sink);
        if (fit_cmd->parsed()) return cmd_fit(fit_levels, fit_output, fit_sink);
        if (limit_cmd->parsed())
            return cmd_limit(limit_chain, limit_total, limit_eps, limit_output, limit_sink);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

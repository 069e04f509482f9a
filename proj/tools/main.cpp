#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ltheory/cli_support.hpp"
#include "ltheory/variational.hpp"

using json = nlohmann::json;
using namespace ltheory;

namespace {

constexpr const char* kVersion = "0.1.0";

struct GlobalOptions {
    std::uint64_t horizon = UltrafilterOracle::kDefaultHorizon;
    std::uint64_t seed = 0x5EED;
    std::string out;
    std::string format = "json";
    std::string replay_path;
};

std::string timestamp_utc() {
    auto now = std::chrono::system_clock::now();
    std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

json manifest(const GlobalOptions& g, int argc, char** argv) {
    std::string cmd;
    for (int i = 0; i < argc; ++i) {
        if (i) cmd += ' ';
        cmd += argv[i];
    }
    return {{"seed", g.seed},
            {"horizon", g.horizon},
            {"command", cmd},
            {"version", kVersion},
            {"timestamp", timestamp_utc()}};
}

void emit(const GlobalOptions& g, const std::string& payload) {
    if (g.out.empty()) {
        std::cout << payload << "\n";
        return;
    }
    std::ofstream f(g.out);
    if (!f) throw UsageError("cannot open output file '" + g.out + "'");
    f << payload << "\n";
}

std::string read_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw UsageError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

Hyperreal::Ctx make_oracle(const GlobalOptions& g) {
    auto ctx = std::make_shared<UltrafilterOracle>(g.horizon);
    if (!g.replay_path.empty()) {
        std::istringstream in(read_file(g.replay_path));
        std::vector<Decision> log;
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            json j = json::parse(line);
            Decision d;
            d.label = j.at("label").get<std::string>();
            d.answer = j.at("answer").get<bool>();
            d.exact = j.value("mode", "exact") == "exact";
            d.witness_count = j.value("witness_count", std::uint64_t{0});
            log.push_back(std::move(d));
        }
        ctx->preload_replay(log);
    }
    return ctx;
}

std::string decision_lines(const UltrafilterOracle& oracle) {
    std::string out;
    for (const auto& d : oracle.decision_log()) {
        json j = {{"label", d.label},
                  {"answer", d.answer},
                  {"mode", d.exact ? "exact" : "heuristic"},
                  {"witness_count", d.witness_count}};
        out += j.dump() + "\n";
    }
    if (!out.empty()) out.pop_back();
    return out;
}

int run_hr_eval(const GlobalOptions& g, const std::string& expr, int argc, char** argv) {
    auto ctx = make_oracle(g);
    EvalOutcome r = evaluate_expression(expr, ctx);
    json j = {{"manifest", manifest(g, argc, argv)},
              {"value_label", r.value_label},
              {"classification", r.classification ? json(*r.classification) : json(nullptr)},
              {"heuristic", r.heuristic},
              {"standard_part", r.standard_part ? json(*r.standard_part) : json(nullptr)},
              {"oracle_decisions_used", r.oracle_decisions_used}};
    if (r.boolean) j["boolean"] = *r.boolean;
    emit(g, j.dump(2));
    return 0;
}

int run_oracle_log(const GlobalOptions& g, const std::vector<std::string>& exprs) {
    auto ctx = make_oracle(g);
    for (const auto& e : exprs) evaluate_expression(e, ctx);
    emit(g, decision_lines(*ctx));
    return 0;
}

int run_transfer_check(const GlobalOptions& g, const std::string& path) {
    auto ctx = make_oracle(g);
    TransferDoc doc = parse_transfer_document(read_file(path), ctx);
    std::string out;
    for (const auto& s : doc.sentences) {
        Assignment args;
        auto f = parse_formula(s, doc.sets, doc.values, &args);
        bool holds = transfer_eval(*f, args, ctx);
        out += json{{"formula", s}, {"holds", holds}}.dump() + "\n";
    }
    if (!out.empty()) out.pop_back();
    emit(g, out);
    return 0;
}

json coeff_payload(const GlobalOptions& g, const Ultrafunction& u, int argc, char** argv) {
    return {{"manifest", manifest(g, argc, argv)},
            {"basis", to_string(u.level->basis())},
            {"m", u.level->m()},
            {"coeffs", u.coeffs}};
}

Ultrafunction load_coeffs(const std::string& path, const std::string& basis_flag,
                          std::size_t m_flag) {
    json j = json::parse(read_file(path));
    Basis basis = basis_from_string(j.value("basis", basis_flag));
    std::size_t m = j.value("m", m_flag);
    return Ultrafunction(make_level(m, basis), j.at("coeffs").get<std::vector<double>>());
}

int run_sweep(const GlobalOptions& g, const std::vector<std::size_t>& elements, unsigned starts,
              int argc, char** argv) {
    MinimizeConfig cfg;
    cfg.seed = g.seed;
    cfg.random_starts = starts;
    NetResult net = minimize_net(elements, cfg);
    CertificationReport cert = certify_infinitesimal(net);

    if (g.format == "csv") {
        std::ostringstream csv;
        csv << "m,h,j_value,sup_norm,grad_norm,iterations,starts_used,converged\n";
        for (const auto& lm : net.levels) {
            csv << lm.u_star.level->m() << "," << lm.u_star.level->h() << "," << lm.j_value << ","
                << lm.u_star.sup_norm() << "," << lm.grad_norm << "," << lm.iterations << ","
                << lm.starts_used << "," << (lm.converged ? "true" : "false") << "\n";
        }
        std::string s = csv.str();
        s.pop_back();
        emit(g, s);
        return 0;
    }

    json levels = json::array();
    for (const auto& lm : net.levels) {
        levels.push_back({{"m", lm.u_star.level->m()},
                          {"h", lm.u_star.level->h()},
                          {"j_value", lm.j_value},
                          {"sup_norm", lm.u_star.sup_norm()},
                          {"grad_norm", lm.grad_norm},
                          {"iterations", lm.iterations},
                          {"starts_used", lm.starts_used},
                          {"converged", lm.converged}});
    }
    json j = {{"manifest", manifest(g, argc, argv)},
              {"levels", levels},
              {"order_j", net.order_j},
              {"order_sup", net.order_sup},
              {"certificate", cert.pass ? "PASS" : "FAIL"},
              {"certificate_reasons", cert.reasons}};
    emit(g, j.dump(2));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    GlobalOptions g;
    if (const char* s = std::getenv("LAMBDA_HORIZON")) g.horizon = std::strtoull(s, nullptr, 10);
    if (const char* s = std::getenv("LAMBDA_ORACLE_SEED")) g.seed = std::strtoull(s, nullptr, 10);

    CLI::App app{"desk-scale hyperreal arithmetic, transfer, and ultrafunction tools"};
    app.require_subcommand(1);
    app.add_option("--horizon", g.horizon, "oracle horizon");
    app.add_option("--seed", g.seed, "random seed");
    app.add_option("--out", g.out, "output file (default: stdout)");
    app.add_option("--format", g.format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--oracle-replay", g.replay_path, "decision log to re-impose");

    std::string expr, file, f_expr, basis = "hat", coeffs_path;
    std::size_t m = 4;
    unsigned starts = 6;
    std::vector<std::size_t> elements;

    auto* hr = app.add_subcommand("hr", "hyperreal arithmetic")->fallthrough();
    auto* hr_eval = hr->add_subcommand("eval", "evaluate an expression")->fallthrough();
    hr_eval->add_option("expr", expr, "expression")->required();

    auto* oracle = app.add_subcommand("oracle", "ultrafilter oracle inspection")->fallthrough();
    std::vector<std::string> eval_exprs;
    auto* oracle_log =
        oracle->add_subcommand("log", "print the decision log as JSON lines")->fallthrough();
    oracle_log->add_option("--eval", eval_exprs, "expressions to evaluate first");

    auto* transfer = app.add_subcommand("transfer", "bounded-formula transfer")->fallthrough();
    auto* transfer_check =
        transfer->add_subcommand("check", "check sentences from a file")->fallthrough();
    transfer_check->add_option("file", file, "formula file")->required();

    auto* project_cmd = app.add_subcommand("project", "L2 projection onto a level")->fallthrough();
    project_cmd->add_option("--basis", basis, "hat|sine");
    project_cmd->add_option("--m", m, "element count")->required();
    project_cmd->add_option("--f", f_expr, "function expression")->required();

    auto* derive_cmd = app.add_subcommand("derive", "generalized derivative")->fallthrough();
    derive_cmd->add_option("--basis", basis, "hat|sine");
    derive_cmd->add_option("--m", m, "element count");
    derive_cmd->add_option("--f", f_expr, "function expression (projected first)");
    derive_cmd->add_option("--coeffs", coeffs_path, "coefficient JSON file");

    auto* variational =
        app.add_subcommand("variational", "nonconvex energy minimization")->fallthrough();
    auto* sweep =
        variational->add_subcommand("sweep", "minimize over a level chain")->fallthrough();
    sweep->add_option("--elements", elements, "comma-separated even element counts")
        ->required()
        ->delimiter(',');
    sweep->add_option("--starts", starts, "random starts per level");

    try {
        app.parse(argc, argv);
        if (hr_eval->parsed()) return run_hr_eval(g, expr, argc, argv);
        if (oracle_log->parsed()) return run_oracle_log(g, eval_exprs);
        if (transfer_check->parsed()) return run_transfer_check(g, file);
        if (project_cmd->parsed()) {
            auto u = project(parse_scalar_field(f_expr), make_level(m, basis_from_string(basis)));
            emit(g, coeff_payload(g, u, argc, argv).dump(2));
            return 0;
        }
        if (derive_cmd->parsed()) {
            if (f_expr.empty() == coeffs_path.empty())
                throw UsageError("derive needs exactly one of --f or --coeffs");
            Ultrafunction u =
                f_expr.empty()
                    ? load_coeffs(coeffs_path, basis, m)
                    : project(parse_scalar_field(f_expr), make_level(m, basis_from_string(basis)));
            emit(g, coeff_payload(g, generalized_derivative(u), argc, argv).dump(2));
            return 0;
        }
        if (sweep->parsed()) return run_sweep(g, elements, starts, argc, argv);
        throw UsageError("no subcommand given");
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

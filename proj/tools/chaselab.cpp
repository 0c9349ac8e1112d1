#include "chaselab/chase.hpp"
#include "chaselab/data_dependent.hpp"
#include "chaselab/graphs.hpp"
#include "chaselab/hierarchy.hpp"
#include "chaselab/parser.hpp"
#include "chaselab/report.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <unistd.h>

using namespace chaselab;
using nlohmann::json;

namespace {

constexpr int kInputError = 2;

const char* kExitCodes = R"(Exit codes:
  classify    0 some termination class holds, 1 none holds
  chase       0 terminated, 3 failed (EGD on two constants), 4 budget exhausted,
              5 aborted by the cycle monitor
  order       0 stratified, 1 not stratified
  irrelevant  0 verdict TERMINATES, 1 verdict UNKNOWN
  any         2 usage, parse or input error)";

struct Config {
    std::string constraints;
    std::string instance;
    int max_k = 3;
    int monitor_k = 0;
    std::string policy = "round-robin";
    std::size_t budget = 10000;
    bool oblivious = false;
    bool standard_graph = false;
    std::vector<std::string> which;
    std::string format = "text";
    std::string graph_format = "dot";
    std::string output;
};

class Printer {
public:
    explicit Printer(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw std::runtime_error("cannot write " + path);
        }
        color_ = path.empty() && ::isatty(STDOUT_FILENO);
        if (const char* env = std::getenv("CHASELAB_COLOR"); env && std::string(env) == "0") color_ = false;
    }

    std::ostream& out() { return file_.is_open() ? file_ : std::cout; }

    std::string flag(bool v) const {
        if (!color_) return v ? "yes" : "no";
        return v ? "\033[32myes\033[0m" : "\033[31mno\033[0m";
    }

    std::string warn(const std::string& s) const { return color_ ? "\033[33m" + s + "\033[0m" : s; }

private:
    std::ofstream file_;
    bool color_ = false;
};

void require_format(const std::string& format, std::initializer_list<const char*> allowed) {
    for (const char* f : allowed)
        if (format == f) return;
    throw CLI::ValidationError("--format", "unsupported format '" + format + "' for this command");
}

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

ConstraintSet read_constraints(const Config& cfg) {
    try {
        return load_constraints(cfg.constraints);
    } catch (const std::exception& e) {
        throw InputError(cfg.constraints + ":" + e.what());
    }
}

Instance read_instance(const Config& cfg, const ConstraintSet& sigma) {
    Schema schema = sigma.schema();
    try {
        return load_instance(cfg.instance, &schema);
    } catch (const std::exception& e) {
        throw InputError(cfg.instance + ":" + e.what());
    }
}

std::string yes_no_row(const Printer& p, const std::string& name, bool v) {
    std::ostringstream os;
    os << std::left << std::setw(24) << name << p.flag(v) << "\n";
    return os.str();
}

int cmd_classify(const Config& cfg) {
    require_format(cfg.format, {"text", "json"});
    auto sigma = read_constraints(cfg);
    auto report = classify(sigma, cfg.max_k);
    Printer p(cfg.output);
    bool caveat = report.stratified && !report.c_stratified;
    if (cfg.format == "json") {
        json j = to_json(report);
        j["caveat"] = caveat ? json("some-sequence-only") : json(nullptr);
        p.out() << j.dump(2) << "\n";
    } else {
        auto& os = p.out();
        os << yes_no_row(p, "weakly acyclic", report.weakly_acyclic);
        os << yes_no_row(p, "safe", report.safe);
        os << yes_no_row(p, "stratified", report.stratified);
        os << yes_no_row(p, "c-stratified", report.c_stratified);
        os << yes_no_row(p, "inductively restricted", report.inductively_restricted);
        os << std::left << std::setw(24) << "T-hierarchy level";
        if (report.t_level)
            os << "T[" << *report.t_level << "]\n";
        else
            os << "none up to T[" << report.max_k << "]\n";
        if (report.wgtgd) os << yes_no_row(p, "weakly guarded", *report.wgtgd);
        if (report.rgtgd) os << yes_no_row(p, "restrictedly guarded", *report.rgtgd);
        if (caveat)
            os << p.warn("warning: stratified but not c-stratified; some chase sequence terminates "
                         "(use --policy scc-order), but not every sequence is guaranteed to")
               << "\n";
    }
    return report.any_termination_class() ? 0 : 1;
}

int exit_code(ChaseStatus s) {
    switch (s) {
    case ChaseStatus::Terminated: return 0;
    case ChaseStatus::Failed: return 3;
    case ChaseStatus::BudgetExhausted: return 4;
    case ChaseStatus::AbortedByMonitor: return 5;
    }
    return kInputError;
}

int cmd_chase(const Config& cfg) {
    require_format(cfg.format, {"text", "json", "dot"});
    auto sigma = read_constraints(cfg);
    auto inst = read_instance(cfg, sigma);
    auto policy = policy_from_string(cfg.policy);
    if (!policy) throw CLI::ValidationError("--policy", "unknown policy '" + cfg.policy + "'");
    ChaseOptions opt;
    opt.policy = *policy;
    opt.budget = cfg.budget;
    opt.mode = cfg.oblivious ? ChaseMode::Oblivious : ChaseMode::Standard;
    if (cfg.monitor_k > 0) opt.monitor = MonitorConfig{cfg.monitor_k};
    auto outcome = chase(inst, sigma, opt);
    Printer p(cfg.output);
    auto& os = p.out();
    if (cfg.format == "json") {
        os << to_json(outcome).dump(2) << "\n";
    } else if (cfg.format == "dot") {
        if (!outcome.monitor) throw CLI::ValidationError("--format", "dot output needs --monitor-k");
        os << monitor_to_dot(*outcome.monitor);
    } else {
        os << "# status: " << to_string(outcome.status) << ", " << outcome.log.size() << " steps\n";
        for (const auto& s : outcome.log) {
            os << "# " << s.ordinal << " " << s.constraint << "(";
            for (std::size_t i = 0; i < s.args.size(); ++i) os << (i ? ", " : "") << serialize(s.args[i]);
            os << ")";
            if (s.substitution)
                os << " " << serialize(s.substitution->first) << " := " << serialize(s.substitution->second);
            os << "\n";
        }
        if (outcome.result) os << serialize(*outcome.result);
    }
    return exit_code(outcome.status);
}

std::string graph_dot(const ConstraintSet& sigma, const std::string& which, FiringCache& cache, json* as_json) {
    auto emit = [&](const auto& g, const std::string& name) {
        if (as_json) (*as_json)[which] = to_json(g);
        return g.to_dot(name);
    };
    if (which == "dep") return emit(dependency_graph(sigma), "dependency");
    if (which == "prop") return emit(propagation_graph(sigma), "propagation");
    if (which == "chase") return emit(chase_graph(sigma, ChaseMode::Standard, &cache), "chase");
    if (which == "c-chase") return emit(chase_graph(sigma, ChaseMode::Oblivious, &cache), "c-chase");
    if (which.rfind("restriction:", 0) == 0) {
        int k = 0;
        try {
            std::size_t used = 0;
            k = std::stoi(which.substr(12), &used);
            if (used != which.size() - 12) k = 0;
        } catch (const std::exception&) {
        }
        if (k < 2) throw CLI::ValidationError("--which", "restriction:k needs an integer k >= 2");
        auto rs = minimal_restriction_system(sigma, k, &cache);
        if (as_json) (*as_json)[which] = to_json(rs);
        std::string dot = rs.graph.to_dot("restriction-" + std::to_string(k));
        return "// f = " + to_string(rs.f) + "\n" + dot;
    }
    throw CLI::ValidationError("--which", "unknown graph kind '" + which + "'");
}

int cmd_graphs(const Config& cfg) {
    require_format(cfg.graph_format, {"dot", "json"});
    auto sigma = read_constraints(cfg);
    FiringCache cache;
    std::vector<std::string> which = cfg.which.empty() ? std::vector<std::string>{"dep", "prop", "chase", "c-chase"}
                                                        : cfg.which;
    json j = json::object();
    std::string dots;
    for (const auto& w : which) dots += graph_dot(sigma, w, cache, cfg.graph_format == "json" ? &j : nullptr);
    Printer p(cfg.output);
    if (cfg.graph_format == "json")
        p.out() << j.dump(2) << "\n";
    else
        p.out() << dots;
    return 0;
}

int cmd_order(const Config& cfg) {
    require_format(cfg.format, {"text", "json"});
    auto sigma = read_constraints(cfg);
    FiringCache cache;
    auto order = terminating_order(sigma, &cache);
    Printer p(cfg.output);
    auto& os = p.out();
    if (cfg.format == "json") {
        json j{{"stratified", order.has_value()}};
        j["order"] = order ? json(*order) : json(nullptr);
        if (!order) j["violating_component"] = *stratification_violation(sigma, ChaseMode::Standard, &cache);
        os << j.dump(2) << "\n";
    } else if (order) {
        for (const auto& comp : *order) {
            std::string line;
            for (const auto& l : comp) line += (line.empty() ? "" : ", ") + l;
            os << "{" << line << "}\n";
        }
    } else {
        auto bad = stratification_violation(sigma, ChaseMode::Standard, &cache);
        std::string line;
        for (const auto& l : *bad)
            line += (line.empty() ? "" : ", ") + l;
        os << "not stratified; component {" << line << "} is not weakly acyclic\n";
    }
    return order ? 0 : 1;
}

int cmd_irrelevant(const Config& cfg) {
    require_format(cfg.format, {"text", "json"});
    auto sigma = read_constraints(cfg);
    auto inst = read_instance(cfg, sigma);
    auto mode = cfg.standard_graph ? ChaseMode::Standard : ChaseMode::Oblivious;
    auto report = data_dependent_verdict(inst, sigma, cfg.max_k, mode);
    Printer p(cfg.output);
    auto& os = p.out();
    if (cfg.format == "json") {
        json j{{"irrelevant", report.irrelevant}, {"verdict", to_string(report.verdict)}, {"max_k", cfg.max_k}};
        j["level"] = report.level ? json(*report.level) : json(nullptr);
        os << j.dump(2) << "\n";
    } else {
        std::string line;
        for (const auto& l : report.irrelevant) line += (line.empty() ? "" : ", ") + l;
        os << "irrelevant: {" << line << "}\n";
        os << "verdict: " << to_string(report.verdict);
        if (report.level) os << " (relevant constraints in T[" << *report.level << "])";
        os << "\n";
    }
    return report.verdict == Verdict::Terminates ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Chase termination analysis for TGDs and EGDs"};
    app.footer(kExitCodes);
    app.require_subcommand(1);
    Config cfg;

    auto* classify_cmd = app.add_subcommand("classify", "Report every static termination class");
    classify_cmd->add_option("constraints", cfg.constraints, "Constraint file")->required()->check(CLI::ExistingFile);
    classify_cmd->add_option("--max-k", cfg.max_k, "Highest hierarchy level to test")
        ->capture_default_str()
        ->check(CLI::Range(2, 16));

    auto* chase_cmd = app.add_subcommand("chase", "Run the chase on an instance");
    chase_cmd->add_option("constraints", cfg.constraints, "Constraint file")->required()->check(CLI::ExistingFile);
    chase_cmd->add_option("instance", cfg.instance, "Instance file")->required()->check(CLI::ExistingFile);
    chase_cmd->add_option("--policy", cfg.policy, "round-robin, fifo-violations or scc-order")->capture_default_str();
    chase_cmd->add_option("--budget", cfg.budget, "Maximum number of chase steps")->capture_default_str();
    chase_cmd->add_option("--monitor-k", cfg.monitor_k, "Abort once the run becomes k-cyclic (0 disables)")
        ->capture_default_str()
        ->check(CLI::NonNegativeNumber);
    chase_cmd->add_flag("--oblivious", cfg.oblivious, "Fire triggers even when already satisfied");

    auto* graphs_cmd = app.add_subcommand("graphs", "Export analysis graphs");
    graphs_cmd->add_option("constraints", cfg.constraints, "Constraint file")->required()->check(CLI::ExistingFile);
    graphs_cmd->add_option("--which", cfg.which, "dep, prop, chase, c-chase or restriction:k (repeatable)");

    auto* order_cmd = app.add_subcommand("order", "Print a terminating order of constraint classes");
    order_cmd->add_option("constraints", cfg.constraints, "Constraint file")->required()->check(CLI::ExistingFile);

    auto* irrelevant_cmd = app.add_subcommand("irrelevant", "Data-dependent irrelevance and verdict");
    irrelevant_cmd->add_option("constraints", cfg.constraints, "Constraint file")->required()->check(CLI::ExistingFile);
    irrelevant_cmd->add_option("instance", cfg.instance, "Instance file")->required()->check(CLI::ExistingFile);
    irrelevant_cmd->add_option("--max-k", cfg.max_k, "Highest hierarchy level to test")
        ->capture_default_str()
        ->check(CLI::Range(2, 16));
    irrelevant_cmd->add_flag("--standard-graph", cfg.standard_graph, "Use the standard instead of the oblivious graph");

    for (auto* sub : {classify_cmd, chase_cmd, order_cmd, irrelevant_cmd}) {
        sub->add_option("--format", cfg.format, "Output format: text or json (chase also dot)")->capture_default_str();
        sub->add_option("-o,--output", cfg.output, "Write to this file instead of stdout");
    }
    graphs_cmd->add_option("--format", cfg.graph_format, "Output format: dot or json")->capture_default_str();
    graphs_cmd->add_option("-o,--output", cfg.output, "Write to this file instead of stdout");
    chase_cmd->footer("--format dot prints the monitor graph (needs --monitor-k)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kInputError;
    }

    try {
        if (*classify_cmd) return cmd_classify(cfg);
        if (*chase_cmd) return cmd_chase(cfg);
        if (*graphs_cmd) return cmd_graphs(cfg);
        if (*order_cmd) return cmd_order(cfg);
        if (*irrelevant_cmd) return cmd_irrelevant(cfg);
    } catch (const CLI::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    }
    return kInputError;
}

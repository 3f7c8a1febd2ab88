#include "qttc/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "qttc/core_verify.hpp"
#include "qttc/instance_gen.hpp"
#include "qttc/io.hpp"
#include "qttc/prices.hpp"
#include "qttc/ttc_cap.hpp"
#include "qttc/ttc_network.hpp"

namespace qttc::cli {

namespace {

/// Raised for unreadable or unwritable paths.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Streams {
    std::istream& in;
    std::ostream& out;
    std::ostream& err;
};

std::string read_all(const std::string& path, std::istream& in) {
    if (path == "-") return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    std::ifstream file(path, std::ios::binary);
    if (!file) throw IoError("cannot open " + path);
    return {std::istreambuf_iterator<char>(file), std::istreambuf_iterator<char>()};
}

void write_all(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << text;
        out.flush();
        return;
    }
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) throw IoError("cannot write " + path);
    file << text;
    if (!file.flush()) throw IoError("cannot write " + path);
}

struct SolveArgs {
    std::string input;
    std::string output;
    std::string trace;
};

struct VerifyArgs {
    std::string input;
    std::string candidate;
    std::string output;
    std::size_t max_coalition = kUnboundedCoalition;
    BlockingRule rule = BlockingRule::quota_aware;
};

struct EnumerateArgs {
    std::string input;
    std::string output;
    EnumerationMode mode = EnumerationMode::balanced;
    BlockingRule rule = BlockingRule::quota_aware;
    std::uint64_t max_space = kDefaultSearchSpaceCap;
};

struct PricesArgs {
    std::string input;
    std::string output;
};

struct GenArgs {
    GenConfig config;
    std::string output;
};

struct ExamplesArgs {
    int id = 3;
    std::string output;
};

int cmd_solve(const SolveArgs& args, Streams io) {
    const auto file = parse_instance(read_all(args.input, io.in));
    ResultFile result;
    result.kind = file.kind;
    StageTrace trace;
    if (file.kind == InstanceKind::network) {
        auto solution = solve_network(file.network);
        result.assignments = std::move(solution.network.assignments);
        trace = std::move(solution.trace);
    } else {
        auto solution = solve_cap(file.cap);
        result.assignments = std::move(solution.allocation.bundles);
        trace = std::move(solution.trace);
    }
    result.stages = trace.stages;
    if (!args.trace.empty()) {
        ResultFile traced = result;
        traced.transfers = trace.transfers;
        write_all(args.trace, serialize_result(traced), io.out);
    }
    write_all(args.output, serialize_result(result), io.out);
    return kOk;
}

int cmd_verify(const VerifyArgs& args, Streams io) {
    const auto file = parse_instance(read_all(args.input, io.in));
    auto result = parse_result(read_all(args.candidate, io.in));
    if (result.kind != file.kind) throw ParseError("candidate kind does not match the instance");

    std::optional<BlockingCertificate> cert;
    if (file.kind == InstanceKind::network) {
        const DirectedNetwork net{result.assignments};
        if (!is_feasible_network(file.network, net)) {
            throw ParseError("candidate network is not feasible");
        }
        cert = find_blocking_coalition(file.network, net, args.max_coalition, args.rule);
    } else {
        const Allocation alloc{result.assignments};
        if (!is_feasible_allocation(file.cap, alloc)) {
            throw ParseError("candidate allocation is not feasible");
        }
        cert = cap_find_blocking(file.cap, alloc, args.max_coalition);
    }

    result.transfers.reset();
    result.prices.reset();
    result.properties.reset();
    result.certificate = cert;
    write_all(args.output, serialize_result(result), io.out);
    if (!cert) {
        io.err << "in core\n";
        return kOk;
    }
    io.err << "blocked by coalition {";
    for (std::size_t k = 0; k < cert->coalition.size(); ++k) io.err << (k ? "," : "") << cert->coalition[k];
    io.err << "}\n";
    return kRejected;
}

int cmd_enumerate(const EnumerateArgs& args, Streams io) {
    const auto file = parse_instance(read_all(args.input, io.in));
    if (file.kind != InstanceKind::network) throw ParseError("enumerate-core takes a network instance");
    const auto core = enumerate_core(file.network, args.mode, args.rule, args.max_space);
    write_all(args.output, serialize_network_list(core, args.mode, args.rule), io.out);
    return kOk;
}

int cmd_prices(const PricesArgs& args, Streams io) {
    const auto file = parse_instance(read_all(args.input, io.in));
    ResultFile result;
    result.kind = file.kind;
    if (file.kind == InstanceKind::network) {
        auto solution = solve_network(file.network);
        auto table = personalized_prices(solution.trace, file.network.agent_count());
        result.properties = verify_price_properties(file.network, solution.network, table);
        result.assignments = std::move(solution.network.assignments);
        result.stages = solution.trace.stages;
        result.prices = std::move(table);
    } else {
        auto solution = solve_cap(file.cap);
        auto table = personalized_prices(solution.trace, file.cap.item_count);
        result.properties = verify_cap_price_properties(file.cap, solution.allocation, table);
        result.assignments = std::move(solution.allocation.bundles);
        result.stages = solution.trace.stages;
        result.prices = std::move(table);
    }
    write_all(args.output, serialize_result(result), io.out);
    return result.properties->all_pass() ? kOk : kRejected;
}

int cmd_gen(const GenArgs& args, Streams io) {
    InstanceFile file;
    file.kind = args.config.kind;
    try {
        if (file.kind == InstanceKind::network) {
            file.network = random_network_instance(args.config);
        } else {
            file.cap = random_cap_instance(args.config);
        }
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
    write_all(args.output, serialize_instance(file), io.out);
    return kOk;
}

int cmd_examples(const ExamplesArgs& args, Streams io) {
    InstanceFile file;
    try {
        auto ex = canonical_example(args.id);
        file.network = std::move(ex.instance);
        file.arbitrary_preferences = ex.arbitrary_preferences;
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
    write_all(args.output, serialize_instance(file), io.out);
    return kOk;
}

const std::map<std::string, BlockingRule> kRules{
    {"quota-aware", BlockingRule::quota_aware},
    {"hyper-relation", BlockingRule::hyper_relation},
};

const std::map<std::string, EnumerationMode> kModes{
    {"balanced", EnumerationMode::balanced},
    {"all", EnumerationMode::all},
};

const std::map<std::string, InstanceKind> kKinds{
    {"network", InstanceKind::network},
    {"cap", InstanceKind::cap},
};

std::string lowered(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"Core-stable outcomes for directed network problems with quotas"};
    app.name("qttc");
    app.require_subcommand(1);

    SolveArgs solve;
    auto* solve_cmd = app.add_subcommand("solve", "Run the staged trading-cycles procedure");
    solve_cmd->add_option("input", solve.input, "Instance file, - for stdin")->required();
    solve_cmd->add_option("output", solve.output, "Result file (default stdout)");
    solve_cmd->add_option("--trace", solve.trace, "Also write the stage trace to this file");

    VerifyArgs verify;
    auto* verify_cmd = app.add_subcommand("verify", "Search for a blocking coalition");
    verify_cmd->add_option("input", verify.input, "Instance file")->required();
    verify_cmd->add_option("candidate", verify.candidate, "Network or allocation file")->required();
    verify_cmd->add_option("--max-coalition", verify.max_coalition, "Largest coalition to try")
        ->check(CLI::PositiveNumber);
    std::string verify_rule = "quota-aware";
    verify_cmd->add_option("--rule", verify_rule, "Gain rule: quota-aware or hyper-relation")
        ->check(CLI::IsMember(kRules, CLI::ignore_case));
    verify_cmd->add_option("-o,--output", verify.output, "Result file with certificate (default stdout)");

    EnumerateArgs enumerate;
    auto* enumerate_cmd = app.add_subcommand("enumerate-core", "List every core network by brute force");
    enumerate_cmd->add_option("input", enumerate.input, "Network instance file")->required();
    std::string enumerate_mode = "balanced";
    std::string enumerate_rule = "quota-aware";
    enumerate_cmd->add_option("--mode", enumerate_mode, "balanced or all")
        ->check(CLI::IsMember(kModes, CLI::ignore_case));
    enumerate_cmd->add_option("--rule", enumerate_rule, "Gain rule: quota-aware or hyper-relation")
        ->check(CLI::IsMember(kRules, CLI::ignore_case));
    enumerate_cmd->add_option("--max-space", enumerate.max_space, "Refuse larger search spaces");
    enumerate_cmd->add_option("-o,--output", enumerate.output, "Output file (default stdout)");

    PricesArgs prices;
    auto* prices_cmd = app.add_subcommand("prices", "Solve, price every link and check the price properties");
    prices_cmd->add_option("input", prices.input, "Instance file")->required();
    prices_cmd->add_option("-o,--output", prices.output, "Output file (default stdout)");

    GenArgs gen;
    auto* gen_cmd = app.add_subcommand("gen", "Generate a seeded random instance");
    std::string gen_kind = "network";
    gen_cmd->add_option("--kind", gen_kind, "network or cap")->check(CLI::IsMember(kKinds, CLI::ignore_case));
    gen_cmd->add_option("--agents", gen.config.agents, "Number of agents")->required();
    gen_cmd->add_option("--max-quota", gen.config.max_quota, "Quota upper bound (network)");
    gen_cmd->add_option("--max-endowment", gen.config.max_endowment, "Endowment size upper bound (cap)");
    gen_cmd->add_option("--seed", gen.config.seed, "Generator seed");
    gen_cmd->add_option("-o,--output", gen.output, "Output file (default stdout)");

    ExamplesArgs examples;
    auto* examples_cmd = app.add_subcommand("examples", "Write one of the canonical example instances");
    examples_cmd->add_option("--id", examples.id, "Example 1, 2 or 3")->required();
    examples_cmd->add_option("-o,--output", examples.output, "Output file (default stdout)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kInvalidInput;
    }

    verify.rule = kRules.at(lowered(verify_rule));
    enumerate.rule = kRules.at(lowered(enumerate_rule));
    enumerate.mode = kModes.at(lowered(enumerate_mode));
    gen.config.kind = kKinds.at(lowered(gen_kind));

    const Streams io{in, out, err};
    try {
        if (*solve_cmd) return cmd_solve(solve, io);
        if (*verify_cmd) return cmd_verify(verify, io);
        if (*enumerate_cmd) return cmd_enumerate(enumerate, io);
        if (*prices_cmd) return cmd_prices(prices, io);
        if (*gen_cmd) return cmd_gen(gen, io);
        if (*examples_cmd) return cmd_examples(examples, io);
    } catch (const SearchSpaceTooLarge& e) {
        err << "error: " << e.what() << "\n";
        return kResourceLimit;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kInvalidInput;
    } catch (const IoError& e) {
        err << "error: " << e.what() << "\n";
        return kInvalidInput;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kInvalidInput;
    }
    return kInvalidInput;
}

}  // namespace qttc::cli

// vpt: visibly pushdown transducer toolkit.
//
// Subcommands read machines in the text format described in FORMAT.md and
// print a key-value document on stdout. Exit codes: 0 on a computed
// verdict, 1 when a check is inconclusive, 2 on usage or input errors.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "vpt/fst_check.hpp"
#include "vpt/oracle.hpp"
#include "vpt/pumping.hpp"
#include "vpt/semantics.hpp"
#include "vpt/textio.hpp"
#include "vpt/vpt_check.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInconclusive = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

vpt::Machine load_machine(const std::string& path) {
    try {
        return vpt::parse_machine(read_file(path));
    } catch (const vpt::ParseError& e) {
        throw UsageError(path + ":" + e.what());
    }
}

vpt::Vpt load_vpt(const std::string& path) {
    vpt::Machine m = load_machine(path);
    if (auto* t = std::get_if<vpt::Vpt>(&m)) return *t;
    throw UsageError(path + ": expected a vpt machine");
}

vpt::Fst load_fst(const std::string& path) {
    vpt::Machine m = load_machine(path);
    if (auto* f = std::get_if<vpt::Fst>(&m)) return *f;
    throw UsageError(path + ": expected an fst machine");
}

void require_valid(const vpt::ValidationReport& report, const std::string& path) {
    if (report.ok()) return;
    throw UsageError(path + ": machine fails validation: " + report.violations.front());
}

const char* verdict_text(vpt::Verdict v) {
    switch (v) {
        case vpt::Verdict::Functional: return "functional";
        case vpt::Verdict::NonFunctional: return "non-functional";
        case vpt::Verdict::Inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

void print_witness(const vpt::Witness& w, const vpt::StructuredAlphabet& alphabet) {
    std::cout << "witness-input: " << vpt::word_text(w.input, alphabet) << "\n";
    std::cout << "witness-output-1: " << (w.out1.empty() ? "eps" : w.out1) << "\n";
    std::cout << "witness-output-2: " << (w.out2.empty() ? "eps" : w.out2) << "\n";
}

std::uint64_t default_node_budget() {
    if (const char* env = std::getenv("VPT_NODE_BUDGET")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return v;
        throw UsageError("VPT_NODE_BUDGET must be a positive integer");
    }
    return 1'000'000;
}

int cmd_validate(const std::string& path) {
    vpt::Machine m = load_machine(path);
    vpt::ValidationReport report =
        std::visit([](const auto& x) { return vpt::validate(x); }, m);
    std::cout << "command: validate\n";
    std::cout << "machine: " << path << "\n";
    std::cout << "valid: " << (report.ok() ? "true" : "false") << "\n";
    for (const std::string& v : report.violations) std::cout << "violation: " << v << "\n";
    return kExitOk;
}

int cmd_run(const std::string& path, const std::string& input) {
    vpt::Machine m = load_machine(path);
    std::visit([&path](const auto& x) { require_valid(vpt::validate(x), path); }, m);

    const vpt::StructuredAlphabet& alphabet =
        std::visit([](const auto& x) -> const vpt::StructuredAlphabet& { return x.alphabet; }, m);
    vpt::InputWord u = vpt::parse_word(input, alphabet);

    std::set<std::string> outs;
    if (auto* t = std::get_if<vpt::Vpt>(&m)) {
        outs = vpt::transduce(*t, u);
    } else if (auto* f = std::get_if<vpt::Fst>(&m)) {
        auto list = vpt::fst_outputs(*f, u);
        outs.insert(list.begin(), list.end());
    } else {
        const vpt::Vpa& a = std::get<vpt::Vpa>(m);
        if (vpt::accepts(a, u)) outs.insert("");
    }

    bool accepted = !outs.empty();
    bool transducer = !std::holds_alternative<vpt::Vpa>(m);
    std::cout << "command: run\n";
    std::cout << "machine: " << path << "\n";
    std::cout << "input: " << vpt::word_text(u, alphabet) << "\n";
    std::cout << "accepted: " << (accepted ? "true" : "false") << "\n";
    if (transducer) {
        std::cout << "output-count: " << outs.size() << "\n";
        for (const std::string& o : outs)
            std::cout << "output: " << (o.empty() ? "eps" : o) << "\n";
    }
    return kExitOk;
}

int cmd_check_functional(const std::string& path, std::uint64_t height_cap,
                         std::uint64_t node_budget) {
    vpt::Vpt t = load_vpt(path);
    require_valid(vpt::validate(t), path);
    vpt::CheckOptions opts;
    if (height_cap > 0) opts.height_cap = height_cap;
    opts.node_budget = node_budget;
    vpt::FunctionalityVerdict v = vpt::check_functional(t, opts);
    std::cout << "command: check-functional\n";
    std::cout << "machine: " << path << "\n";
    std::cout << "verdict: " << verdict_text(v.verdict) << "\n";
    std::cout << "exact: " << (v.exact ? "true" : "false") << "\n";
    std::cout << "height-cap: " << v.height_cap << "\n";
    std::cout << "nodes: " << v.nodes << "\n";
    if (v.witness) print_witness(*v.witness, t.alphabet);
    return v.verdict == vpt::Verdict::Inconclusive ? kExitInconclusive : kExitOk;
}

int cmd_fst_check(const std::string& path, std::int64_t max_len) {
    vpt::Fst f = load_fst(path);
    require_valid(vpt::validate(f), path);
    vpt::FunctionalityVerdict v = max_len < 0
                                      ? vpt::fst_functional(f)
                                      : vpt::fst_functional_bounded(f, std::size_t(max_len));
    std::cout << "command: fst-check\n";
    std::cout << "machine: " << path << "\n";
    std::cout << "verdict: " << verdict_text(v.verdict) << "\n";
    std::cout << "exact: " << (v.exact ? "true" : "false") << "\n";
    if (max_len >= 0) std::cout << "bound: " << v.bound << "\n";
    if (v.witness) print_witness(*v.witness, f.alphabet);
    return kExitOk;
}

int cmd_equiv(const std::string& path1, const std::string& path2, std::uint64_t height_cap,
              std::uint64_t node_budget) {
    vpt::Vpt t1 = load_vpt(path1);
    require_valid(vpt::validate(t1), path1);
    vpt::Vpt t2 = vpt::remap_inputs(load_vpt(path2), t1.alphabet);
    require_valid(vpt::validate(t2), path2);
    vpt::CheckOptions opts;
    if (height_cap > 0) opts.height_cap = height_cap;
    opts.node_budget = node_budget;
    vpt::EquivVerdict v = vpt::check_equiv_functional(t1, t2, opts);
    std::cout << "command: equiv\n";
    std::cout << "machine-1: " << path1 << "\n";
    std::cout << "machine-2: " << path2 << "\n";
    const char* outcome = v.outcome == vpt::EquivOutcome::Equivalent     ? "equivalent"
                          : v.outcome == vpt::EquivOutcome::NotEquivalent ? "not-equivalent"
                                                                          : "inconclusive";
    std::cout << "verdict: " << outcome << "\n";
    std::cout << "exact: " << (v.exact ? "true" : "false") << "\n";
    if (v.domain_witness) {
        std::cout << "witness-kind: domain\n";
        std::cout << "witness-input: " << vpt::word_text(*v.domain_witness, t1.alphabet) << "\n";
    } else if (v.output_witness) {
        std::cout << "witness-kind: output\n";
        print_witness(*v.output_witness, t1.alphabet);
    }
    return v.outcome == vpt::EquivOutcome::Inconclusive ? kExitInconclusive : kExitOk;
}

int cmd_domain_equiv(const std::string& path1, const std::string& path2,
                     std::uint64_t node_budget) {
    vpt::Vpt t1 = load_vpt(path1);
    require_valid(vpt::validate(t1), path1);
    vpt::Vpt t2 = vpt::remap_inputs(load_vpt(path2), t1.alphabet);
    require_valid(vpt::validate(t2), path2);
    vpt::DomainEquivVerdict v = vpt::domain_equiv(t1, t2, node_budget);
    std::cout << "command: domain-equiv\n";
    std::cout << "machine-1: " << path1 << "\n";
    std::cout << "machine-2: " << path2 << "\n";
    const char* outcome = v.outcome == vpt::DomainRel::Equal    ? "equal"
                          : v.outcome == vpt::DomainRel::Differ ? "differ"
                                                                : "inconclusive";
    std::cout << "verdict: " << outcome << "\n";
    if (v.witness)
        std::cout << "witness-input: " << vpt::word_text(*v.witness, t1.alphabet) << "\n";
    return v.outcome == vpt::DomainRel::Inconclusive ? kExitInconclusive : kExitOk;
}

int cmd_oracle(const std::string& path1, const std::string& path2, std::size_t max_len,
               bool naive) {
    vpt::OracleOptions opts;
    opts.naive = naive;
    vpt::Vpt t1 = load_vpt(path1);
    require_valid(vpt::validate(t1), path1);
    std::cout << "command: oracle\n";
    std::cout << "machine: " << path1 << "\n";
    if (!path2.empty()) {
        vpt::Vpt t2 = vpt::remap_inputs(load_vpt(path2), t1.alphabet);
        require_valid(vpt::validate(t2), path2);
        std::cout << "machine-2: " << path2 << "\n";
        vpt::OracleReport r = vpt::brute_equiv(t1, t2, max_len, opts);
        std::cout << "verdict: "
                  << (r.verdict == vpt::OracleVerdict::EquivUpTo ? "equivalent-up-to" : "differ")
                  << "\n";
        std::cout << "bound: " << r.max_len << "\n";
        std::cout << "checked: " << r.checked_count << "\n";
        if (r.domain_witness) {
            std::cout << "witness-kind: domain\n";
            std::cout << "witness-input: " << vpt::word_text(*r.domain_witness, t1.alphabet)
                      << "\n";
        } else if (r.witness) {
            std::cout << "witness-kind: output\n";
            print_witness(*r.witness, t1.alphabet);
        }
        return kExitOk;
    }
    vpt::OracleReport r = vpt::brute_functional(t1, max_len, opts);
    std::cout << "verdict: "
              << (r.verdict == vpt::OracleVerdict::Functional ? "functional-up-to"
                                                              : "non-functional")
              << "\n";
    std::cout << "bound: " << r.max_len << "\n";
    std::cout << "checked: " << r.checked_count << "\n";
    if (r.witness) print_witness(*r.witness, t1.alphabet);
    return kExitOk;
}

int cmd_shrink(const std::string& path, const std::string& input) {
    vpt::Vpt t = load_vpt(path);
    require_valid(vpt::validate(t), path);
    vpt::InputWord u = vpt::parse_word(input, t.alphabet);
    vpt::InputWord shorter;
    try {
        shorter = vpt::shrink_witness(t, u);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    std::cout << "command: shrink\n";
    std::cout << "machine: " << path << "\n";
    std::cout << "input: " << vpt::word_text(u, t.alphabet) << "\n";
    std::cout << "input-length: " << u.size() << "\n";
    std::cout << "shrunk-input: " << vpt::word_text(shorter, t.alphabet) << "\n";
    std::cout << "shrunk-length: " << shorter.size() << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"visibly pushdown transducer toolkit"};
    app.require_subcommand(1);

    std::string path, path2, input;
    std::uint64_t height_cap = 0;  // 0 = exact bound 8N^4
    std::int64_t fst_max_len = -1;
    std::size_t max_len = 12;
    bool naive = false;
    std::uint64_t node_budget = 0;

    auto* validate_cmd = app.add_subcommand("validate", "structural validation report");
    validate_cmd->add_option("machine", path)->required();

    auto* run_cmd = app.add_subcommand("run", "transduce one input word");
    run_cmd->add_option("machine", path)->required();
    run_cmd->add_option("--input", input, "space separated symbols")->required();

    auto* check_cmd = app.add_subcommand("check-functional", "decide functionality of a vpt");
    check_cmd->add_option("machine", path)->required();
    check_cmd->add_option("--height-cap", height_cap, "expansion height cap (default 8N^4)");
    check_cmd->add_option("--node-budget", node_budget, "search node budget");

    auto* fst_cmd = app.add_subcommand("fst-check", "decide functionality of an fst");
    fst_cmd->add_option("machine", path)->required();
    fst_cmd->add_option("--max-len", fst_max_len, "brute-force length bound instead of the exact check");

    auto* equiv_cmd = app.add_subcommand("equiv", "equivalence of two functional vpts");
    equiv_cmd->add_option("machine-1", path)->required();
    equiv_cmd->add_option("machine-2", path2)->required();
    equiv_cmd->add_option("--height-cap", height_cap);
    equiv_cmd->add_option("--node-budget", node_budget);

    auto* dom_cmd = app.add_subcommand("domain-equiv", "compare the domains of two vpts");
    dom_cmd->add_option("machine-1", path)->required();
    dom_cmd->add_option("machine-2", path2)->required();
    dom_cmd->add_option("--node-budget", node_budget);

    auto* oracle_cmd = app.add_subcommand("oracle", "brute-force ground truth");
    oracle_cmd->add_option("machine", path)->required();
    oracle_cmd->add_option("machine-2", path2);
    oracle_cmd->add_option("--max-len", max_len, "input length bound (default 12)");
    oracle_cmd->add_flag("--naive", naive, "generate-and-test enumeration");

    auto* shrink_cmd = app.add_subcommand("shrink", "shrink a non-functionality witness");
    shrink_cmd->add_option("machine", path)->required();
    shrink_cmd->add_option("--input", input, "space separated symbols")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (node_budget == 0) node_budget = default_node_budget();
        if (validate_cmd->parsed()) return cmd_validate(path);
        if (run_cmd->parsed()) return cmd_run(path, input);
        if (check_cmd->parsed()) return cmd_check_functional(path, height_cap, node_budget);
        if (fst_cmd->parsed()) return cmd_fst_check(path, fst_max_len);
        if (equiv_cmd->parsed()) return cmd_equiv(path, path2, height_cap, node_budget);
        if (dom_cmd->parsed()) return cmd_domain_equiv(path, path2, node_budget);
        if (oracle_cmd->parsed()) return cmd_oracle(path, path2, max_len, naive);
        if (shrink_cmd->parsed()) return cmd_shrink(path, input);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const vpt::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

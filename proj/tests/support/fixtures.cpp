#include "support/fixtures.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "vpt/textio.hpp"

namespace testsupport {

std::string fixture_path(const std::string& name) {
    return std::string(VPT_FIXTURE_DIR) + "/" + name;
}

std::string read_fixture(const std::string& name) {
    std::ifstream in(fixture_path(name), std::ios::binary);
    if (!in) throw std::runtime_error("missing fixture " + name);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

vpt::Vpt load_vpt(const std::string& name) {
    return std::get<vpt::Vpt>(vpt::parse_machine(read_fixture(name)));
}

vpt::Fst load_fst(const std::string& name) {
    return std::get<vpt::Fst>(vpt::parse_machine(read_fixture(name)));
}

namespace {
std::string rep(const std::string& s, std::size_t n) {
    std::string r;
    for (std::size_t i = 0; i < n; ++i) r += s;
    return r;
}
}  // namespace

std::string fig1_upper_formula(std::size_t n) { return "dfcab" + rep("cabcab", n) + "gh"; }

std::string fig1_lower_formula(std::size_t n) {
    return "dfc" + rep("abc", n) + "ab" + rep("cab", n) + "gh";
}

vpt::InputWord fig1_domain_word(const vpt::Vpt& fig1, std::size_t n) {
    const auto& a = fig1.alphabet;
    vpt::InputWord w;
    w.push_back(vpt::call_sym(*a.calls.find("c1")));
    for (std::size_t i = 0; i < n; ++i) w.push_back(vpt::call_sym(*a.calls.find("c2")));
    w.push_back(vpt::call_sym(*a.calls.find("c3")));
    w.push_back(vpt::ret_sym(*a.returns.find("r3")));
    for (std::size_t i = 0; i < n; ++i) w.push_back(vpt::ret_sym(*a.returns.find("r2")));
    w.push_back(vpt::ret_sym(*a.returns.find("r1")));
    return w;
}

vpt::Vpt call_loop_machine() {
    vpt::Vpt t;
    t.alphabet.calls.add("c");
    t.alphabet.returns.add("r");
    t.alphabet.add_output('a');
    t.alphabet.add_output('b');
    vpt::StateId s = t.states.add("s");
    vpt::StateId d = t.states.add("t");
    vpt::StackId g = t.stack_syms.add("g");
    t.initial = {s};
    t.final = {d};
    t.call_trans.push_back({s, 0, "a", g, s});
    t.ret_trans.push_back({s, 0, "b", g, d});
    t.ret_trans.push_back({d, 0, "b", g, d});
    return t;
}

vpt::Vpt call_loop_machine_ambiguous() {
    vpt::Vpt t = call_loop_machine();
    t.call_trans.push_back({t.call_trans[0].src, 0, "aa", t.call_trans[0].push,
                            t.call_trans[0].dst});
    return t;
}

vpt::Vpt two_output_machine() { return load_vpt("shrink1.vpt"); }

vpt::InputWord balanced_word(std::size_t k) {
    vpt::InputWord w;
    for (std::size_t i = 0; i < k; ++i) w.push_back(vpt::call_sym(0));
    for (std::size_t i = 0; i < k; ++i) w.push_back(vpt::ret_sym(0));
    return w;
}

}  // namespace testsupport

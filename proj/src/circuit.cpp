#include "coldgate/circuit.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "coldgate/config.hpp"
#include "coldgate/errors.hpp"

namespace coldgate {

namespace {

std::vector<std::string> tokens(const std::string& s) {
    std::string t = s;
    std::replace(t.begin(), t.end(), ',', ' ');
    std::istringstream in(t);
    std::vector<std::string> out;
    for (std::string w; in >> w;) out.push_back(w);
    return out;
}

[[noreturn]] void fail(int line, const std::string& msg) {
    throw ValidationError("circuit line " + std::to_string(line) + ": " + msg);
}

int site_index(const std::string& w, int sites, int line) {
    int v = 0;
    try {
        std::size_t pos = 0;
        v = std::stoi(w, &pos);
        if (pos != w.size()) throw std::invalid_argument(w);
    } catch (const std::exception&) {
        fail(line, "bad site '" + w + "'");
    }
    if (v < 1 || v > sites) fail(line, "site " + w + " out of range 1.." + std::to_string(sites));
    return v - 1;
}

}  // namespace

std::vector<CircuitOp> parse_circuit(const std::string& text, int sites) {
    std::vector<CircuitOp> ops;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        if (auto h = raw.find('#'); h != std::string::npos) raw = raw.substr(0, h);
        auto w = tokens(raw);
        if (w.empty()) continue;
        std::string cmd = w[0];
        std::transform(cmd.begin(), cmd.end(), cmd.begin(), [](unsigned char c) { return std::toupper(c); });
        const std::vector<std::string> args(w.begin() + 1, w.end());
        CircuitOp op{OpCode::init, {}, {}, lineno};
        auto phase = [&](const std::string& a) {
            try {
                return parse_number(a);
            } catch (const ValidationError&) {
                fail(lineno, "bad phase '" + a + "'");
            }
        };
        if (cmd == "INIT") {
            op.op = OpCode::init;
            if (args.size() > 1) fail(lineno, "INIT takes one digit string");
            if (!args.empty()) {
                if (static_cast<int>(args[0].size()) != sites) fail(lineno, "INIT digit string length != sites");
                for (char c : args[0]) {
                    if (c == '0' || c == '1') op.values.push_back(c - '0');
                    else if (c == 'r' || c == 'R') op.values.push_back(2);
                    else fail(lineno, std::string("bad INIT digit '") + c + "'");
                }
            }
        } else if (cmd == "H" || cmd == "X" || cmd == "Z") {
            op.op = cmd == "H" ? OpCode::h : cmd == "X" ? OpCode::x : OpCode::z;
            if (args.empty()) fail(lineno, cmd + " needs at least one site");
            for (const auto& a : args) op.sites.push_back(site_index(a, sites, lineno));
        } else if (cmd == "LX" || cmd == "LY") {
            op.op = cmd == "LX" ? OpCode::lx : OpCode::ly;
            if (args.size() != 1) fail(lineno, cmd + " takes one phase");
            op.values.push_back(phase(args[0]));
        } else if (cmd == "SWEEP") {
            op.op = OpCode::sweep;
            if (args.empty()) fail(lineno, "SWEEP needs a phase list");
            for (const auto& a : args) op.values.push_back(phase(a));
        } else if (cmd == "MEASURE") {
            op.op = OpCode::measure;
            if (args.empty()) fail(lineno, "MEASURE needs sites or 'all'");
            if (args.size() == 1 && (args[0] == "all" || args[0] == "ALL")) {
                for (int s = 0; s < sites; ++s) op.sites.push_back(s);
            } else {
                for (const auto& a : args) op.sites.push_back(site_index(a, sites, lineno));
            }
        } else {
            fail(lineno, "unknown command '" + w[0] + "'");
        }
        ops.push_back(std::move(op));
    }
    return ops;
}

CircuitRun run_circuit(const std::vector<CircuitOp>& ops, int lx, int ly, int r_site, std::uint64_t seed) {
    std::vector<int> levels(lx * ly, 2);
    if (r_site >= 0) {
        if (r_site >= lx * ly) throw ValidationError("circuit: r site out of range");
        levels[r_site] = 3;
    }
    CircuitRun run{LatticeRegister(lx, ly, levels), {}, {}};
    std::mt19937_64 rng(seed);
    auto pulse = [&](int site, Gate g) { run.reg.apply_1q(site, gate_matrix(g), site == r_site ? 2 : 1); };
    for (const auto& op : ops) {
        switch (op.op) {
            case OpCode::init: {
                std::vector<int> d;
                for (double v : op.values) d.push_back(static_cast<int>(v));
                run.reg.reset(d);
                break;
            }
            case OpCode::h:
                for (int s : op.sites) pulse(s, Gate::H);
                break;
            case OpCode::x:
                for (int s : op.sites) pulse(s, Gate::X);
                break;
            case OpCode::z:
                for (int s : op.sites) pulse(s, Gate::Z);
                break;
            case OpCode::lx: apply_lx(run.reg, op.values[0]); break;
            case OpCode::ly: apply_ly(run.reg, op.values[0]); break;
            case OpCode::sweep: {
                if (r_site < 0)
                    throw ValidationError("circuit line " + std::to_string(op.line) + ": SWEEP needs an r site");
                std::vector<int> string_sites;
                for (int s = 0; s < lx * ly; ++s)
                    if (s != r_site) string_sites.push_back(s);
                if (op.values.size() != string_sites.size())
                    throw ValidationError("circuit line " + std::to_string(op.line) + ": SWEEP needs " +
                                          std::to_string(string_sites.size()) + " phases");
                sweep(run.reg, r_site, string_sites, op.values);
                break;
            }
            case OpCode::measure:
                run.measured_sites.push_back(op.sites);
                run.outcomes.push_back(run.reg.measure(op.sites, rng));
                break;
        }
    }
    return run;
}

}  // namespace coldgate

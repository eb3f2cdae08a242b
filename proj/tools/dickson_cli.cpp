// dickson_cli: command-line access to Dickson permutation polynomial tools.
//
// Exit codes: 0 ok, 1 verify mismatch, 2 bad arguments, 3 evaluator mismatch
// under --check, 4 arithmetic overflow, 5 brute force requested over its cap.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dickson/congruence.hpp"
#include "dickson/criteria.hpp"
#include "dickson/dickson.hpp"
#include "dickson/group.hpp"
#include "dickson/numth.hpp"
#include "dickson/oracle.hpp"
#include "dickson/output.hpp"
#include "dickson/verify.hpp"

namespace {

using namespace dickson;
using json = nlohmann::ordered_json;

enum Exit : int { kOk = 0, kVerifyFailed = 1, kBadArgs = 2, kCheckMismatch = 3, kOverflow = 4, kCap = 5 };

struct CheckMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    bool json = false;
};

class Timer {
public:
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string join(const json& arr, const char* sep = ", ") {
    std::string out;
    for (std::size_t i = 0; i < arr.size(); ++i) {
        if (i) out += sep;
        out += arr[i].is_string() ? arr[i].get<std::string>() : arr[i].dump();
    }
    return out;
}

u64 parse_n(const std::string& line) {
    std::size_t pos = 0;
    const auto trimmed = line.substr(0, line.find_last_not_of(" \t\r") + 1);
    if (trimmed.empty() || trimmed[0] == '-') throw std::invalid_argument("bad n: '" + line + "'");
    const u64 v = std::stoull(trimmed, &pos);
    if (pos != trimmed.size()) throw std::invalid_argument("bad n: '" + line + "'");
    return v;
}

std::vector<u64> read_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open input file " + path);
    std::vector<u64> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        out.push_back(parse_n(line));
    }
    return out;
}

void emit_json(const OutputRecord& r) { std::cout << json(r).dump() << '\n'; }

// ---------------------------------------------------------------------------
// eval

struct EvalArgs {
    u64 k = 0;
    i64 a = 1;
    u64 n = 1;
    u64 u = 0;
    bool fast = false;
    bool recurrence = false;
    bool check = false;
};

OutputRecord run_eval(const EvalArgs& args) {
    if (args.n == 0) throw std::invalid_argument("n must be >= 1");
    Timer t;
    OutputRecord r;
    r.command = "eval";
    r.inputs = {{"k", dec(args.k)}, {"a", dec(args.a)}, {"n", dec(args.n)}, {"u", dec(args.u)}};
    const DicksonParams p{args.k, args.a, args.n};
    u64 value = 0;
    if (args.check) {
        value = eval_fast(p, args.u);
        const u64 ref = eval_recurrence(p, args.u);
        if (value != ref)
            throw CheckMismatch("fast evaluator gives " + dec(value) + ", recurrence gives " + dec(ref));
        r.method = "check";
    } else if (args.recurrence) {
        value = eval_recurrence(p, args.u);
        r.method = "recurrence";
    } else {
        value = eval_fast(p, args.u);
        r.method = "fast";
    }
    r.result = {{"value", dec(value)}};
    r.elapsed_ms = t.ms();
    return r;
}

// ---------------------------------------------------------------------------
// is-perm

struct IsPermArgs {
    u64 k = 1;
    u64 n = 1;
    i64 a = 1;
    std::string method = "all";
    u64 cap = kDefaultBruteCap;
};

OutputRecord run_is_perm(const IsPermArgs& args) {
    if (args.n == 0) throw std::invalid_argument("n must be >= 1");
    Timer t;
    OutputRecord r;
    r.command = "is-perm";
    r.inputs = {{"k", dec(args.k)}, {"n", dec(args.n)}, {"a", dec(args.a)}};
    r.method = args.method;
    const auto f = factorize(args.n);
    auto b = [](bool v) { return std::string(v ? "true" : "false"); };
    if (args.method == "w" || args.method == "all") r.result["w_criterion"] = b(is_perm_w(args.k, f));
    if (args.method == "v" || args.method == "all") r.result["v_criterion"] = b(is_perm_v(args.k, f));
    if (args.method == "brute" || (args.method == "all" && args.n <= args.cap))
        r.result["brute_force"] = b(is_perm_brute(args.k, args.a, args.n, args.cap));
    r.elapsed_ms = t.ms();
    return r;
}

// ---------------------------------------------------------------------------
// profile

OutputRecord run_profile(u64 n) {
    if (n < 2) throw std::invalid_argument("profile needs n >= 2");
    Timer t;
    const auto p = profile(n);
    OutputRecord r;
    r.command = "profile";
    r.inputs = {{"n", dec(n)}};
    r.method = "formula";
    r.result["n"] = dec(p.n);
    r.result["e"] = dec(p.e);
    if (p.l0) r.result["l0"] = dec(*p.l0);
    r.result["ls"] = dec_array(p.ls);
    r.result["w"] = dec(p.w);
    r.result["v"] = dec(p.v);
    r.elapsed_ms = t.ms();
    return r;
}

// ---------------------------------------------------------------------------
// solve

Congruence parse_congruence(const std::string& s) {
    const auto colon = s.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("expected residue:modulus, got '" + s + "'");
    std::size_t p1 = 0, p2 = 0;
    const auto rs = s.substr(0, colon), ms = s.substr(colon + 1);
    const i64 residue = std::stoll(rs, &p1);
    if (ms.empty() || ms[0] == '-') throw std::invalid_argument("bad modulus in '" + s + "'");
    const u64 modulus = std::stoull(ms, &p2);
    if (p1 != rs.size() || p2 != ms.size()) throw std::invalid_argument("bad congruence '" + s + "'");
    return Congruence(residue, modulus);
}

OutputRecord run_solve(const std::vector<std::string>& specs) {
    Timer t;
    std::vector<Congruence> cs;
    for (const auto& s : specs) cs.push_back(parse_congruence(s));
    OutputRecord r;
    r.command = "solve";
    for (std::size_t i = 0; i < specs.size(); ++i) r.inputs["c" + std::to_string(i)] = specs[i];
    r.method = "chain";
    const auto sol = solve_chain(cs);
    if (sol) {
        r.result["solvable"] = "true";
        r.result["residue"] = dec(sol->residue);
        r.result["modulus"] = dec(sol->modulus);
    } else {
        r.result["solvable"] = "false";
    }
    r.elapsed_ms = t.ms();
    return r;
}

// ---------------------------------------------------------------------------
// kernel

OutputRecord run_kernel(u64 n, bool witnesses) {
    if (n < 2) throw std::invalid_argument("kernel needs n >= 2");
    Timer t;
    const auto kr = enumerate_kernel(n);
    OutputRecord r;
    r.command = "kernel";
    r.inputs = {{"n", dec(n)}};
    r.method = "kernel_enum";
    r.result["w"] = dec(kr.profile.w);
    r.result["size"] = dec(static_cast<u64>(kr.kernel.size()));
    r.result["kernel"] = dec_array(kr.kernel);
    if (witnesses) {
        auto& out = r.result["witnesses"] = json::array();
        for (const auto& [k, tuple] : kr.witnesses) {
            json moduli = json::array();
            for (const auto& c : kr.components) moduli.push_back(dec(c.modulus));
            out.push_back({{"k", dec(k)}, {"tuple", dec_array(tuple)}, {"moduli", moduli}});
        }
    }
    r.elapsed_ms = t.ms();
    return r;
}

// ---------------------------------------------------------------------------
// order

OutputRecord run_order(u64 n, const std::string& method, u64 cap) {
    if (n == 0) throw std::invalid_argument("n must be >= 1");
    Timer t;
    GroupOrderReport rep;
    if (n == 1) {
        rep = trivial_report();
    } else if (method == "oracle") {
        if (n > cap) throw CapExceeded("oracle requested for n = " + dec(n) + " over cap " + dec(cap));
        rep = oracle_report(n, cap);
    } else {
        const auto f = factorize(n);
        if (method == "closed" || (method == "auto" && f.is_prime_power())) {
            if (!f.is_prime_power()) throw std::invalid_argument("closed form needs a prime power, got " + dec(n));
            rep = closed_form_report(f.factors[0].prime, f.factors[0].exponent);
        } else {
            rep = group_order(f);
        }
    }
    OutputRecord r;
    r.command = "order";
    r.inputs = {{"n", dec(n)}, {"method", method}};
    r.method = std::string(to_string(rep.method));
    r.result = {{"n", dec(rep.n)},
                {"w", dec(rep.w)},
                {"phi_w", dec(rep.phi_w)},
                {"kernel_size", dec(rep.kernel_size)},
                {"order", dec(rep.order)}};
    r.elapsed_ms = t.ms();
    return r;
}

// ---------------------------------------------------------------------------
// text rendering

void print_text(const OutputRecord& r) {
    const auto& res = r.result;
    if (r.command == "eval") {
        std::cout << res["value"].get<std::string>() << '\n';
    } else if (r.command == "kernel") {
        std::cout << "K_" << r.inputs.at("n") << " = {" << join(res["kernel"]) << "} mod " << res["w"].get<std::string>()
                  << "  (|K| = " << res["size"].get<std::string>() << ")\n";
        if (res.contains("witnesses"))
            for (const auto& w : res["witnesses"])
                std::cout << "  " << w["k"].get<std::string>() << " <- (" << join(w["tuple"])
                          << ") mod (" << join(w["moduli"]) << ")\n";
    } else if (r.command == "order") {
        std::cout << "|G_" << res["n"].get<std::string>() << "| = " << res["order"].get<std::string>()
                  << "  (w = " << res["w"].get<std::string>() << ", phi(w) = " << res["phi_w"].get<std::string>()
                  << ", |K| = " << res["kernel_size"].get<std::string>() << ", method = " << r.method << ")\n";
    } else if (r.command == "solve") {
        if (res["solvable"] == "true")
            std::cout << res["residue"].get<std::string>() << " mod " << res["modulus"].get<std::string>() << '\n';
        else
            std::cout << "no solution\n";
    } else {
        for (const auto& [key, value] : res.items()) {
            std::cout << key << ": " << (value.is_array() ? "[" + join(value) + "]" : value.get<std::string>())
                      << '\n';
        }
    }
}

void emit(const Options& opt, const OutputRecord& r) {
    if (opt.json)
        emit_json(r);
    else
        print_text(r);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dickson permutation polynomials over Z_n"};
    app.require_subcommand(1);
    Options opt;
    app.add_flag("--json", opt.json, "One JSON object per result");

    EvalArgs eval_args;
    auto* eval = app.add_subcommand("eval", "Evaluate D_k(u, a) mod n");
    eval->add_option("k", eval_args.k, "degree")->required();
    eval->add_option("a", eval_args.a, "parameter")->required();
    eval->add_option("n", eval_args.n, "modulus")->required()->check(CLI::PositiveNumber);
    eval->add_option("u", eval_args.u, "argument")->required();
    auto* fast_flag = eval->add_flag("--fast", eval_args.fast, "doubling evaluator (default)");
    eval->add_flag("--recurrence", eval_args.recurrence, "O(k) recurrence")->excludes(fast_flag);
    eval->add_flag("--check", eval_args.check, "run both evaluators and fail on mismatch");

    IsPermArgs perm_args;
    auto* is_perm = app.add_subcommand("is-perm", "Does D_k(x, a) permute Z_n?");
    is_perm->add_option("k", perm_args.k, "degree")->required();
    is_perm->add_option("n", perm_args.n, "modulus")->required()->check(CLI::PositiveNumber);
    is_perm->add_option("-a,--a", perm_args.a, "parameter for the brute-force check");
    is_perm->add_option("--method", perm_args.method, "w | v | brute | all")
        ->check(CLI::IsMember({"w", "v", "brute", "all"}));
    is_perm->add_option("--cap", perm_args.cap, "brute-force modulus cap");

    u64 profile_n = 0;
    std::string profile_input;
    auto* prof = app.add_subcommand("profile", "Component moduli l_i, w(n) and v(n)");
    prof->add_option("n", profile_n, "modulus");
    prof->add_option("--input", profile_input, "file with one n per line");

    std::vector<std::string> solve_specs;
    auto* solve = app.add_subcommand("solve", "Solve x = r_i (mod m_i), moduli need not be coprime");
    solve->add_option("congruences", solve_specs, "residue:modulus pairs")->required();

    u64 kernel_n = 0;
    bool witnesses = false;
    std::string kernel_input;
    auto* kernel = app.add_subcommand("kernel", "Enumerate K_n");
    kernel->add_option("n", kernel_n, "modulus");
    kernel->add_flag("--witnesses", witnesses, "print the residue tuple behind each element");
    kernel->add_option("--input", kernel_input, "file with one n per line");

    u64 order_n = 0;
    std::string order_method = "auto";
    u64 order_cap = oracle::kDefaultCap;
    std::string order_input;
    auto* order = app.add_subcommand("order", "Compute |G_n|");
    order->add_option("n", order_n, "modulus");
    order->add_option("--method", order_method, "auto | closed | enum | oracle")
        ->check(CLI::IsMember({"auto", "closed", "enum", "oracle"}));
    order->add_option("--cap", order_cap, "oracle modulus cap");
    order->add_option("--input", order_input, "file with one n per line");

    u64 table_from = 2, table_to = 50;
    std::string table_method = "enum";
    u64 table_cap = oracle::kDefaultCap;
    bool table_prime_powers = false;
    std::string table_input;
    auto* table = app.add_subcommand("table", "|G_n| for a range of n");
    table->add_option("--from", table_from, "first n");
    table->add_option("--to", table_to, "last n");
    table->add_option("--method", table_method, "auto | closed | enum | oracle")
        ->check(CLI::IsMember({"auto", "closed", "enum", "oracle"}));
    table->add_option("--cap", table_cap, "oracle modulus cap");
    table->add_flag("--prime-powers", table_prime_powers, "only prime powers, with the closed form alongside");
    table->add_option("--input", table_input, "file with one n per line");

    u64 verify_max = 100;
    u64 verify_cap = oracle::kDefaultCap;
    u64 verify_seed = 1;
    u64 verify_samples = 1000;
    auto* verify = app.add_subcommand("verify", "Compare kernel enumeration with brute force for n in [2, N]");
    verify->add_option("--max-n", verify_max, "largest n")->required();
    verify->add_option("--cap", verify_cap, "oracle modulus cap");
    verify->add_option("--seed", verify_seed, "seed for the random evaluator sample");
    verify->add_option("--samples", verify_samples, "random evaluator comparisons");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kBadArgs;
    }

    try {
        if (*eval) {
            emit(opt, run_eval(eval_args));
        } else if (*is_perm) {
            if (perm_args.method == "brute" && perm_args.n > perm_args.cap)
                throw CapExceeded("n = " + dec(perm_args.n) + " over brute-force cap " + dec(perm_args.cap));
            emit(opt, run_is_perm(perm_args));
        } else if (*prof) {
            if (!profile_input.empty()) {
                for (u64 n : read_input(profile_input)) emit_json(run_profile(n));
            } else {
                emit(opt, run_profile(profile_n));
            }
        } else if (*solve) {
            emit(opt, run_solve(solve_specs));
        } else if (*kernel) {
            if (!kernel_input.empty()) {
                for (u64 n : read_input(kernel_input)) emit_json(run_kernel(n, witnesses));
            } else {
                emit(opt, run_kernel(kernel_n, witnesses));
            }
        } else if (*order) {
            if (!order_input.empty()) {
                for (u64 n : read_input(order_input)) emit_json(run_order(n, order_method, order_cap));
            } else {
                emit(opt, run_order(order_n, order_method, order_cap));
            }
        } else if (*table) {
            std::vector<u64> ns;
            if (!table_input.empty()) {
                ns = read_input(table_input);
            } else {
                if (table_from < 1 || table_to < table_from) throw std::invalid_argument("bad --from/--to range");
                for (u64 n = table_from; n <= table_to; ++n) ns.push_back(n);
            }
            const bool as_json = opt.json || !table_input.empty();
            if (!as_json)
                std::cout << "n\tw\tphi_w\t|K_n|\t|G_n|" << (table_prime_powers ? "\tclosed" : "") << '\n';
            for (u64 n : ns) {
                std::optional<u64> closed;
                if (table_prime_powers) {
                    if (n < 2) continue;
                    const auto f = factorize(n);
                    if (!f.is_prime_power()) continue;
                    closed = group_order_closed_pe(f.factors[0].prime, f.factors[0].exponent);
                }
                auto rec = run_order(n, table_method, table_cap);
                rec.command = "table";
                if (closed) rec.result["closed_form"] = dec(*closed);
                if (as_json) {
                    emit_json(rec);
                } else {
                    const auto& res = rec.result;
                    std::cout << res["n"].get<std::string>() << '\t' << res["w"].get<std::string>() << '\t'
                              << res["phi_w"].get<std::string>() << '\t' << res["kernel_size"].get<std::string>()
                              << '\t' << res["order"].get<std::string>();
                    if (closed) std::cout << '\t' << dec(*closed);
                    std::cout << '\n';
                }
            }
        } else if (*verify) {
            if (verify_max > verify_cap)
                throw CapExceeded("--max-n " + dec(verify_max) + " over oracle cap " + dec(verify_cap));
            Timer t;
            const auto eval_summary = verify_evaluators(verify_samples, verify_seed);
            const auto sweep = verify_oracle_equivalence(verify_max, verify_cap);
            OutputRecord r;
            r.command = "verify";
            r.inputs = {{"max_n", dec(verify_max)}, {"seed", dec(verify_seed)}, {"samples", dec(verify_samples)}};
            r.method = "oracle";
            const bool ok = eval_summary.ok() && sweep.ok();
            r.result["status"] = ok ? "pass" : "fail";
            r.result["moduli_checked"] = dec(sweep.checked);
            r.result["evaluator_samples"] = dec(eval_summary.checked);
            const auto& failure = !eval_summary.ok() ? eval_summary.first_failure : sweep.first_failure;
            if (failure) {
                r.result["counterexample_n"] = dec(failure->n);
                r.result["counterexample"] = failure->what;
            }
            r.elapsed_ms = t.ms();
            r.result["runtime_ms"] = format_ms(r.elapsed_ms);
            emit(opt, r);
            return ok ? kOk : kVerifyFailed;
        }
    } catch (const CheckMismatch& e) {
        std::cerr << "check failed: " << e.what() << '\n';
        return kCheckMismatch;
    } catch (const OverflowError& e) {
        std::cerr << "overflow: " << e.what() << '\n';
        return kOverflow;
    } catch (const CapExceeded& e) {
        std::cerr << "cap exceeded: " << e.what() << '\n';
        return kCap;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kBadArgs;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kBadArgs;
    }
    return kOk;
}

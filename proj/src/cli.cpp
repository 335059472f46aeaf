#include "pagame/cli.hpp"

#include "pagame/compiler.hpp"
#include "pagame/errors.hpp"
#include "pagame/extraction.hpp"
#include "pagame/trace.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <random>

namespace pagame {

namespace {

struct Inputs {
    std::uint64_t lo = 0, hi = 0;
};

Inputs parse_inputs(const std::string& s) {
    auto dots = s.find("..");
    try {
        if (dots == std::string::npos) {
            auto v = std::stoull(s);
            return {v, v};
        }
        Inputs r{std::stoull(s.substr(0, dots)), std::stoull(s.substr(dots + 2))};
        if (r.lo > r.hi) throw UserError("empty input range " + s);
        return r;
    } catch (const std::logic_error&) {
        throw UserError("bad input range '" + s + "', expected a..b");
    }
}

Env parse_params(const std::vector<std::string>& ps) {
    Env env;
    for (const auto& p : ps) {
        auto eq = p.find('=');
        if (eq == std::string::npos || eq == 0) throw UserError("bad parameter '" + p + "', expected name=value");
        std::string v = p.substr(eq + 1);
        if (v.empty() || v.find_first_not_of("0123456789") != std::string::npos)
            throw UserError("parameter value must be a numeral: " + p);
        env[p.substr(0, eq)] = Nat(v);
    }
    return env;
}

std::string render_sequent(const std::vector<Formula>& s) {
    std::string out;
    for (const auto& f : s) out += (out.empty() ? "" : ", ") + render(f);
    return out;
}

ProofFile load_checked(const std::string& file, std::uint64_t lint_bound, std::ostream& err) {
    ProofFile pf = load_proof(file);
    CheckReport r = check_proof(pf, {lint_bound});
    for (const auto& e : r.errors) err << file << ":" << e.line << ": error: " << e.message << "\n";
    if (!r.ok()) throw UserError(file + ": proof check failed with " + std::to_string(r.errors.size()) + " error(s)");
    return pf;
}

Proof find_cut(const ProofFile& pf, std::optional<std::size_t> id) {
    for (const auto& n : proof_nodes(pf.root)) {
        if (id && n->id != *id) continue;
        if (n->kind == RuleKind::Cut && !is_literal(n->formula)) return n;
        if (id) throw UserError("node " + std::to_string(*id) + " is not a compound cut");
    }
    throw UserError(id ? "no node with id " + std::to_string(*id) : std::string("the proof has no compound cut"));
}

TraceRecord debate_record(std::size_t position, const DebateRecord& d) {
    TraceRecord r;
    r.add("position", std::to_string(position)).add("stage", std::to_string(d.stage)).add("case", d.label);
    r.add("n", std::to_string(d.n));
    if (!d.last_move.empty()) r.add("move", d.last_move);
    if (!d.u.empty()) r.add("u", d.u);
    if (!d.delta.empty()) r.add("delta", d.delta);
    return r;
}

Opponent seeded_opponent(std::uint64_t seed, std::uint64_t bound) {
    auto rng = std::make_shared<std::mt19937_64>(seed);
    return [rng, bound](const Play& p) { return random_opponent(*rng, bound)(p); };
}

// ---------------------------------------------------------------------------

int cmd_check(const std::string& file, std::uint64_t lint_bound, std::ostream& out, std::ostream& err) {
    ProofFile pf = load_proof(file);
    CheckReport r = check_proof(pf, {lint_bound});
    for (const auto& e : r.errors) err << file << ":" << e.line << ": error: " << e.message << "\n";
    for (const auto& e : r.notes) out << file << ":" << e.line << ": note: " << e.message << "\n";
    if (!r.ok()) return 1;
    Bound b = declared_bound(pf.root);
    TraceRecord rec;
    rec.add("status", "ok").add("nodes", std::to_string(r.nodes)).add("compound_cuts", std::to_string(r.compound_cuts));
    rec.add("conclusion", render_sequent(pf.root->conclusion)).add("gamma", render(b.gamma)).add("alpha", render(b.alpha));
    out << render(rec) << "\n";
    return 0;
}

int cmd_compile(const std::string& file, const std::string& out_file, const Env& env, std::uint64_t lint_bound,
                std::size_t samples, std::uint64_t seed, std::size_t fuel, std::ostream& out, std::ostream& err) {
    ProofFile pf = load_checked(file, lint_bound, err);
    DRStrategy g = compile(pf, env);
    auto plays = sample_plays(pf.sig, g, seeded_opponent(seed, 8), samples, fuel);
    DRCheckReport rep = dr_strategy_check(pf.sig, g, plays);
    for (const auto& v : rep.violations) err << "violation: " << v << "\n";
    TraceRecord rec;
    rec.add("context", render_sequent(g.context)).add("gamma", render(g.gamma)).add("alpha", render(g.alpha));
    rec.add("witnesses", std::to_string(g.witnesses.size())).add("sampled_plays", std::to_string(plays.size()));
    rec.add("positions", std::to_string(rep.positions)).add("violations", std::to_string(rep.violations.size()));
    if (out_file.empty()) {
        out << render(rec) << "\n";
    } else {
        std::ofstream f(out_file);
        if (!f) throw UserError("cannot write " + out_file);
        write_trace(f, {rec});
    }
    return rep.ok() ? 0 : 2;
}

std::optional<Selector> read_selector(const std::string& line) {
    if (line == "left" || line == "l") return Selector::left();
    if (line == "right" || line == "r") return Selector::right();
    if (!line.empty() && line.find_first_not_of("0123456789") == std::string::npos) return Selector::at(Nat(line));
    return std::nullopt;
}

int cmd_play(const std::string& file, const Env& env, std::uint64_t lint_bound, std::size_t fuel, std::istream& in,
             std::ostream& out, std::ostream& err) {
    ProofFile pf = load_checked(file, lint_bound, err);
    DRStrategy g = compile(pf, env);
    Play p{g.context, {}};
    out << "game: " << render_sequent(p.context) << "\n";
    for (std::size_t step = 0; step < fuel; ++step) {
        if (auto lit = winning_literal(pf.sig, p)) {
            out << "eloisa wins with " << render(*lit) << "\n";
            return 0;
        }
        if (to_move(p) == Player::Eloisa) {
            StrategyEval ev = g.eval(p);
            if (!ev.move) throw BrokenStrategy("strategy gave no move at " + render(p));
            push_move(pf.sig, p, *ev.move);
            out << "eloisa: " << render(*ev.move) << "  h=" << render(ev.height) << "\n";
            continue;
        }
        const Formula& q = p.moves.back().formula;
        if (q->kind == FKind::And)
            out << "abelard, answer " << render(q) << "\n  left: " << render(q->left) << "\n  right: " << render(q->right)
                << "\n";
        else
            out << "abelard, answer " << render(q) << " with a numeral n\n";
        while (true) {
            out << "> " << std::flush;
            std::string line;
            if (!std::getline(in, line)) throw UserError("input ended before the game did");
            line.erase(0, line.find_first_not_of(" \t"));
            line.erase(line.find_last_not_of(" \t\r") + 1);
            if (line == "quit") return 0;
            auto s = read_selector(line);
            std::optional<std::string> bad;
            Move m;
            if (!s) {
                bad = "expected left, right or a numeral";
            } else {
                try {
                    m = make_reply(p, *s);
                    bad = legality_error(pf.sig, p, m);
                } catch (const std::invalid_argument& e) {
                    bad = e.what();
                }
            }
            if (bad) {
                out << "illegal reply (" << *bad << "), try again\n";
                continue;
            }
            p.moves.push_back(m);
            out << "abelard: " << render(m) << "\n";
            break;
        }
    }
    throw FuelExhausted("game exceeded " + std::to_string(fuel) + " moves");
}

int cmd_debate(const std::string& file, const Env& env, std::optional<std::size_t> cut_id, bool trace,
               std::uint64_t seed, std::uint64_t reply_bound, std::size_t fuel, std::uint64_t lint_bound,
               std::ostream& out, std::ostream& err) {
    ProofFile pf = load_checked(file, lint_bound, err);
    Proof node = find_cut(pf, cut_id);
    CutParts c = cut_parts(pf.sig, node, env);
    DebateOptions opt;
    opt.verify = true;
    Opponent opp = seeded_opponent(seed, reply_bound);
    Play p{c.gamma, {}};
    std::size_t positions = 0, stages = 0;
    for (std::size_t step = 0;; ++step) {
        if (step >= fuel) throw FuelExhausted("game exceeded " + std::to_string(fuel) + " moves");
        if (is_winning(pf.sig, p)) break;
        if (to_move(p) == Player::Abelard) {
            auto b = opp(p);
            push_move(pf.sig, p, *b);
            continue;
        }
        CutDrRun run = cut_dr_run(pf.sig, c.g0, c.g1, c.gamma, c.phi, p, opt);
        if (trace)
            for (const auto& d : run.debate.records) out << render(debate_record(positions, d)) << "\n";
        stages += run.debate.records.size();
        ++positions;
        if (!run.result.move) throw BrokenStrategy("cut gave no move at " + render(p));
        push_move(pf.sig, p, *run.result.move);
    }
    TraceRecord rec;
    rec.add("cut", std::to_string(node->id)).add("formula", render(c.phi)).add("positions", std::to_string(positions));
    rec.add("stages", std::to_string(stages)).add("outcome", "won").add("play", render(p));
    out << render(rec) << "\n";
    return 0;
}

int cmd_extract(const std::string& file, const std::string& inputs, bool trace, std::uint64_t lint_bound,
                std::ostream& out, std::ostream& err) {
    ProofFile pf = load_checked(file, lint_bound, err);
    DRStrategy g = compile(pf);
    Inputs r = parse_inputs(inputs);
    for (std::uint64_t n = r.lo; n <= r.hi; ++n) {
        Extraction e = extract_pi2(pf.sig, g, Nat(n), {});
        if (trace)
            for (std::size_t s = 0; s < e.stages.size(); ++s)
                out << render_stage(s, e.stages[s].value, e.stages[s].ordinal) << "\n";
        TraceRecord rec;
        rec.add("input", std::to_string(n)).add("output", e.outputs[0].str());
        rec.add("trace_length", std::to_string(e.stages.size())).add("max_ordinal", render(e.max_ordinal()));
        out << render(rec) << "\n";
        if (n == r.hi) break;
    }
    return 0;
}

int cmd_nci(const std::string& file, const std::vector<std::string>& oracles, bool trace, std::uint64_t lint_bound,
            std::ostream& out, std::ostream& err) {
    ProofFile pf = load_checked(file, lint_bound, err);
    DRStrategy g = compile(pf);
    if (g.context.size() != 1) throw UserError("nci needs a proof of a single formula");
    std::size_t k = check_nci_shape(g.context[0]);
    if (oracles.size() != k)
        throw UserError("goal has " + std::to_string(k) + " universal block(s); give as many --oracle terms");
    std::vector<CounterFn> fs;
    for (std::size_t j = 0; j < k; ++j) {
        Term t = parse_term(oracles[j]);
        pf.sig.check_term(t);
        std::set<std::string> fv;
        free_vars(t, fv);
        for (const auto& v : fv) {
            bool ok = (k == 1 && v == "x");
            for (std::size_t i = 1; i <= j + 1; ++i) ok = ok || v == "x" + std::to_string(i);
            if (!ok) throw UserError("oracle " + std::to_string(j + 1) + " may use x1..x" + std::to_string(j + 1) +
                                     ", not " + v);
        }
        Signature sig = pf.sig;
        fs.push_back([t, sig](const std::vector<Nat>& xs) {
            Env e;
            for (std::size_t i = 0; i < xs.size(); ++i) e["x" + std::to_string(i + 1)] = xs[i];
            e["x"] = xs[0];
            return sig.eval(t, e);
        });
    }
    Extraction e = extract_nci(pf.sig, g, fs, {});
    if (trace)
        for (std::size_t s = 0; s < e.stages.size(); ++s)
            out << render_stage(s, e.stages[s].value, e.stages[s].ordinal) << "\n";
    TraceRecord rec;
    std::vector<Nat> prefix;
    for (std::size_t j = 0; j < k; ++j) {
        prefix.push_back(e.outputs[j]);
        rec.add("x" + std::to_string(j + 1), e.outputs[j].str());
        rec.add("y" + std::to_string(j + 1), fs[j](prefix).str());
    }
    rec.add("holds", nci_holds(pf.sig, g.context[0], fs, e.outputs) ? "true" : "false");
    rec.add("trace_length", std::to_string(e.stages.size())).add("max_ordinal", render(e.max_ordinal()));
    out << render(rec) << "\n";
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"Proof games for first-order arithmetic: check, compile, play, debate, extract"};
    app.require_subcommand(1);

    std::string file, out_file, inputs = "0..5", expr;
    std::vector<std::string> params, oracles;
    std::uint64_t lint_bound = 16, seed = 1, reply_bound = 5;
    std::size_t fuel = 100'000, samples = 20, cut_id = 0;
    bool trace = false;

    auto add_file = [&](CLI::App* c) { c->add_option("file", file, "proof file (.paproof)")->required(); };
    auto add_lint = [&](CLI::App* c) {
        c->add_option("--lint-bound", lint_bound, "instantiations per variable in the basic-axiom lint");
    };

    auto* check = app.add_subcommand("check", "check a proof file");
    add_file(check);
    add_lint(check);

    auto* comp = app.add_subcommand("compile", "compile a proof to a strategy and test it on sampled plays");
    add_file(comp);
    add_lint(comp);
    comp->add_option("--out", out_file, "write the summary record to this .trace file");
    comp->add_option("--param", params, "value of a free variable, name=n");
    comp->add_option("--samples", samples, "random Abelard plays to check");
    comp->add_option("--seed", seed, "random seed");
    comp->add_option("--fuel", fuel, "move limit per play");

    auto* play = app.add_subcommand("play", "play Abelard against the compiled strategy");
    add_file(play);
    add_lint(play);
    play->add_option("--param", params, "value of a free variable, name=n");
    play->add_option("--fuel", fuel, "move limit");

    auto* deb = app.add_subcommand("debate", "run the debate of a compound cut against a random Abelard");
    add_file(deb);
    add_lint(deb);
    auto* cut_opt = deb->add_option("--cut", cut_id, "node id of the cut (default: the first compound cut)");
    deb->add_option("--param", params, "value of a free variable, name=n");
    deb->add_flag("--trace", trace, "stream one record per debate stage");
    deb->add_option("--seed", seed, "random seed");
    deb->add_option("--reply-bound", reply_bound, "largest numeral Abelard replies with");
    deb->add_option("--fuel", fuel, "move limit");

    auto* ext = app.add_subcommand("extract", "tabulate the witness function of a forall-exists theorem");
    add_file(ext);
    add_lint(ext);
    ext->add_option("--inputs", inputs, "input range a..b");
    ext->add_flag("--trace", trace, "print the descent stages");

    auto* nci = app.add_subcommand("nci", "no-counterexample witnesses for a prenex theorem");
    add_file(nci);
    add_lint(nci);
    nci->add_option("--oracle", oracles, "counterexample function as a term in x1..xj (or x)")->required();
    nci->add_flag("--trace", trace, "print the descent stages");

    auto* ord = app.add_subcommand("ord", "evaluate an ordinal expression");
    ord->add_option("expr", expr, "expression over w, numerals, +, * and ^")->required();

    std::vector<std::string> argv_store{"pagame"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : argv_store) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    try {
        Env env = parse_params(params);
        if (check->parsed()) return cmd_check(file, lint_bound, out, err);
        if (comp->parsed()) return cmd_compile(file, out_file, env, lint_bound, samples, seed, fuel, out, err);
        if (play->parsed()) return cmd_play(file, env, lint_bound, fuel, in, out, err);
        if (deb->parsed())
            return cmd_debate(file, env, cut_opt->count() ? std::optional<std::size_t>(cut_id) : std::nullopt, trace,
                              seed, reply_bound, fuel, lint_bound, out, err);
        if (ext->parsed()) return cmd_extract(file, inputs, trace, lint_bound, out, err);
        if (nci->parsed()) return cmd_nci(file, oracles, trace, lint_bound, out, err);
        if (ord->parsed()) {
            out << render(eval_ordinal_expr(expr)) << "\n";
            return 0;
        }
    } catch (const UserError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const CapacityError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const FuelExhausted& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}

}  // namespace pagame

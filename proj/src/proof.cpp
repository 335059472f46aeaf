#include "pagame/proof.hpp"

#include "pagame/errors.hpp"

#include <fstream>
#include <functional>
#include <sstream>

namespace pagame {

std::string render(RuleKind k) {
    switch (k) {
        case RuleKind::BasicAxiom: return "basic-axiom";
        case RuleKind::Induction: return "induction";
        case RuleKind::TI: return "ti";
        case RuleKind::Or: return "or";
        case RuleKind::And: return "and";
        case RuleKind::Exists: return "exists";
        case RuleKind::Forall: return "forall";
        case RuleKind::Cut: return "cut";
    }
    return "";
}

bool sequent_contains(const std::vector<Formula>& s, const Formula& f) {
    for (const auto& g : s)
        if (formula_equal(g, f)) return true;
    return false;
}

Formula at(const Formula& phi, const std::string& x, const Term& t) { return subst(phi, x, t); }

namespace {

std::string fresh(const std::string& base, const std::set<std::string>& avoid) {
    if (!avoid.count(base)) return base;
    for (int i = 1;; ++i)
        if (!avoid.count(base + std::to_string(i))) return base + std::to_string(i);
}

void add_unique(std::vector<Formula>& s, const Formula& f) {
    if (!sequent_contains(s, f)) s.push_back(f);
}

std::vector<Formula> without(const std::vector<Formula>& s, const Formula& f) {
    std::vector<Formula> out;
    for (const auto& g : s)
        if (!formula_equal(g, f)) add_unique(out, g);
    return out;
}

// The premise with k replaced by the principal formula.
std::vector<Formula> replace(const std::vector<Formula>& s, const Formula& k, const Formula& f) {
    std::vector<Formula> out;
    bool placed = false;
    for (const auto& g : s) {
        if (formula_equal(g, k)) {
            if (!placed) add_unique(out, f);
            placed = true;
        } else {
            add_unique(out, g);
        }
    }
    if (!placed) add_unique(out, f);
    return out;
}

}  // namespace

std::vector<Formula> induction_formulas(const Formula& phi, const std::string& x) {
    return {negate(at(phi, x, num(0))), exists(x, land(phi, negate(at(phi, x, succ(var(x)))))), forall(x, phi)};
}

std::vector<Formula> ti_formulas(const Formula& phi, const std::string& x, const Ordinal& alpha) {
    std::set<std::string> avoid;
    free_vars(phi, avoid);
    avoid.insert(x);
    std::string b = fresh(x + "b", avoid);
    // forall x < t. phi(x), written forall x (not (x < t) or phi(x))
    auto below = [&](const Term& t) { return forall(x, lor(nolt(var(x), t), phi)); };
    return {exists(b, land(below(var(b)), negate(at(phi, x, var(b))))), below(num(encode_ordinal(alpha)))};
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

class ProofReader {
public:
    explicit ProofReader(ProofFile& pf) : pf_(pf) {}

    Proof node(const Sexpr& e) {
        auto h = e.head();
        if (h == "basic-axiom") return basic(e);
        if (h == "induction" || h == "ti") return induction(e, h == "ti");
        if (h == "rule") return rule(e);
        fail(e, "expected a proof node (basic-axiom, induction, ti or rule), got " + render(e));
    }

    Formula formula(const Sexpr& e) {
        Formula f = parse_formula(e, &pf_.macros);
        try {
            check_formula(pf_.sig, f);
        } catch (const UserError& err) {
            fail(e, err.what());
        }
        return f;
    }

    std::vector<Formula> formulas(const Sexpr& e, std::size_t from) {
        std::vector<Formula> out;
        for (std::size_t i = from; i < e.items.size(); ++i) add_unique(out, formula(e.items[i]));
        return out;
    }

    [[noreturn]] static void fail(const Sexpr& e, const std::string& msg) {
        throw ParseError("line " + std::to_string(e.line) + ": " + msg);
    }

private:
    std::shared_ptr<ProofNode> make(RuleKind k, const Sexpr& e) {
        auto n = std::make_shared<ProofNode>();
        n->kind = k;
        n->line = e.line;
        return n;
    }

    Proof basic(const Sexpr& e) {
        auto n = make(RuleKind::BasicAxiom, e);
        n->conclusion = formulas(e, 1);
        if (n->conclusion.empty()) fail(e, "basic-axiom needs at least one formula");
        return n;
    }

    static std::string atom_arg(const Sexpr& opt) {
        if (opt.items.size() != 2 || !opt.items[1].is_atom()) fail(opt, opt.head() + " takes one name");
        return opt.items[1].text;
    }

    Proof induction(const Sexpr& e, bool ti) {
        auto n = make(ti ? RuleKind::TI : RuleKind::Induction, e);
        bool have_bound = false;
        for (std::size_t i = 1; i < e.items.size(); ++i) {
            const Sexpr& opt = e.items[i];
            auto h = opt.head();
            if (h == "var") {
                n->var = atom_arg(opt);
            } else if (h == "formula") {
                if (opt.items.size() != 2) fail(opt, "formula takes one formula");
                n->formula = formula(opt.items[1]);
            } else if (h == "context") {
                n->context = formulas(opt, 1);
            } else if (h == "ordinal" && ti) {
                if (opt.items.size() != 2 || opt.items[1].is_list()) fail(opt, "ordinal takes one notation");
                n->bound = eval_ordinal_expr(opt.items[1].text);
                have_bound = true;
            } else {
                fail(opt, "unexpected item in " + e.head() + ": " + render(opt));
            }
        }
        if (n->var.empty() || !n->formula) fail(e, e.head() + " needs (var x) and (formula f)");
        if (ti && !have_bound) fail(e, "ti needs (ordinal \"...\")");
        n->conclusion = n->context;
        auto ax = ti ? ti_formulas(n->formula, n->var, n->bound) : induction_formulas(n->formula, n->var);
        for (const auto& f : ax) add_unique(n->conclusion, f);
        return n;
    }

    Proof rule(const Sexpr& e) {
        if (e.items.size() < 2 || !e.items[1].is_atom()) fail(e, "rule needs a kind");
        const std::string& kind = e.items[1].text;
        RuleKind k;
        if (kind == "or") k = RuleKind::Or;
        else if (kind == "and") k = RuleKind::And;
        else if (kind == "exists") k = RuleKind::Exists;
        else if (kind == "forall") k = RuleKind::Forall;
        else if (kind == "cut") k = RuleKind::Cut;
        else fail(e, "unknown rule: " + kind);
        auto n = make(k, e);
        std::optional<std::vector<Formula>> conclusion;
        bool picked = false;
        for (std::size_t i = 2; i < e.items.size(); ++i) {
            const Sexpr& opt = e.items[i];
            auto h = opt.head();
            if (h == "basic-axiom" || h == "induction" || h == "ti" || h == "rule") {
                n->premises.push_back(node(opt));
            } else if (h == "principal" || h == "formula") {
                if (opt.items.size() != 2) fail(opt, h + " takes one formula");
                n->formula = formula(opt.items[1]);
            } else if (h == "witness") {
                if (opt.items.size() != 2) fail(opt, "witness takes one term");
                n->witness = parse_term(opt.items[1]);
                try {
                    pf_.sig.check_term(n->witness);
                } catch (const UserError& err) {
                    fail(opt, err.what());
                }
            } else if (h == "eigen") {
                n->var = atom_arg(opt);
            } else if (h == "pick") {
                auto side = atom_arg(opt);
                if (side != "left" && side != "right") fail(opt, "pick is left or right");
                n->pick = side == "left" ? Selector::left() : Selector::right();
                picked = true;
            } else if (h == "conclusion") {
                conclusion = formulas(opt, 1);
            } else {
                fail(opt, "unexpected item in rule " + kind + ": " + render(opt));
            }
        }
        std::size_t want = (k == RuleKind::And || k == RuleKind::Cut) ? 2 : 1;
        if (n->premises.size() != want)
            fail(e, "rule " + kind + " takes " + std::to_string(want) + " premise" + (want > 1 ? "s" : ""));
        if (!n->formula) fail(e, "rule " + kind + (k == RuleKind::Cut ? " needs (formula f)" : " needs (principal f)"));
        const Formula& f = n->formula;
        auto shape = [&](FKind want_kind, const char* what) {
            if (f->kind != want_kind) fail(e, std::string("principal formula of rule ") + kind + " is not " + what);
        };
        switch (k) {
            case RuleKind::Or:
                shape(FKind::Or, "a disjunction");
                if (!picked) fail(e, "rule or needs (pick left|right)");
                break;
            case RuleKind::And: shape(FKind::And, "a conjunction"); break;
            case RuleKind::Exists:
                shape(FKind::Exists, "an existential");
                if (!n->witness) fail(e, "rule exists needs (witness t)");
                break;
            case RuleKind::Forall:
                shape(FKind::Forall, "a universal");
                if (n->var.empty()) fail(e, "rule forall needs (eigen y)");
                break;
            default: break;
        }
        if (conclusion) {
            n->conclusion = *conclusion;
        } else {
            const auto& p = n->premises;
            switch (k) {
                case RuleKind::Or: n->conclusion = replace(p[0]->conclusion, child(f, n->pick), f); break;
                case RuleKind::Exists: n->conclusion = replace(p[0]->conclusion, instance(f, n->witness), f); break;
                case RuleKind::Forall: n->conclusion = replace(p[0]->conclusion, instance(f, var(n->var)), f); break;
                case RuleKind::And: {
                    n->conclusion = replace(p[0]->conclusion, f->left, f);
                    for (const auto& g : without(p[1]->conclusion, f->right)) add_unique(n->conclusion, g);
                    break;
                }
                case RuleKind::Cut: {
                    n->conclusion = without(p[0]->conclusion, negate(f));
                    for (const auto& g : without(p[1]->conclusion, f)) add_unique(n->conclusion, g);
                    break;
                }
                default: break;
            }
        }
        return n;
    }

    ProofFile& pf_;
};

void number(const Proof& p, std::size_t& next) {
    const_cast<ProofNode&>(*p).id = next++;
    for (const auto& q : p->premises) number(q, next);
}

std::vector<std::string> names(const Sexpr& e) {
    std::vector<std::string> out;
    if (!e.is_list()) ProofReader::fail(e, "expected a parameter list");
    for (const auto& a : e.items) {
        if (!a.is_atom()) ProofReader::fail(a, "parameters are names");
        out.push_back(a.text);
    }
    return out;
}

}  // namespace

ProofFile parse_proof(std::string_view text) {
    auto top = parse_sexprs(text);
    if (top.size() != 1 || top[0].head() != "proof") throw ParseError("a proof file holds one (proof ...) form");
    const Sexpr& e = top[0];
    ProofFile pf;
    ProofReader reader(pf);
    for (std::size_t i = 1; i < e.items.size(); ++i) {
        const Sexpr& item = e.items[i];
        auto h = item.head();
        if (h == "sig") {
            for (std::size_t j = 1; j < item.items.size(); ++j) {
                const Sexpr& d = item.items[j];
                if (d.head() != "def" || d.items.size() != 4 || !d.items[1].is_atom())
                    ProofReader::fail(d, "expected (def name (params) body)");
                try {
                    pf.sig.define(d.items[1].text, names(d.items[2]), parse_term(d.items[3]));
                } catch (const ParseError&) {
                    throw;
                } catch (const UserError& err) {
                    ProofReader::fail(d, err.what());
                }
            }
        } else if (h == "let") {
            if (item.items.size() != 4 || !item.items[1].is_atom()) ProofReader::fail(item, "expected (let name (params) formula)");
            FormulaMacro m{names(item.items[2]), reader.formula(item.items[3])};
            pf.macros[item.items[1].text] = std::move(m);
        } else if (h == "goal") {
            pf.goal = reader.formulas(item, 1);
        } else {
            if (pf.root) ProofReader::fail(item, "a proof has one root node");
            pf.root = reader.node(item);
        }
    }
    if (!pf.root) throw ParseError("proof has no root node");
    std::size_t next = 0;
    number(pf.root, next);
    return pf;
}

ProofFile load_proof(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UserError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return parse_proof(ss.str());
    } catch (const UserError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

std::vector<Proof> proof_nodes(const Proof& root) {
    std::vector<Proof> out;
    std::function<void(const Proof&)> walk = [&](const Proof& p) {
        out.push_back(p);
        for (const auto& q : p->premises) walk(q);
    };
    walk(root);
    return out;
}

std::vector<Term> proof_terms(const Proof& root) {
    std::vector<Term> out;
    auto add = [&](const Term& t) {
        for (const auto& u : out)
            if (term_equal(u, t)) return;
        out.push_back(t);
    };
    std::function<void(const Term&)> term = [&](const Term& t) {
        add(t);
        for (const auto& a : t->args) term(a);
    };
    std::function<void(const Formula&)> formula = [&](const Formula& f) {
        switch (f->kind) {
            case FKind::Eq:
            case FKind::Neq:
            case FKind::Olt:
            case FKind::Nolt:
                term(f->lhs);
                term(f->rhs);
                break;
            case FKind::Or:
            case FKind::And:
                formula(f->left);
                formula(f->right);
                break;
            case FKind::Exists:
            case FKind::Forall:
                add(var(f->var));
                formula(f->body);
                break;
        }
    };
    for (const auto& n : proof_nodes(root)) {
        for (const auto& f : n->conclusion) formula(f);
        if (n->witness) term(n->witness);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Checking

namespace {

class Checker {
public:
    Checker(const ProofFile& pf, const CheckOptions& opt, CheckReport& r) : pf_(pf), opt_(opt), r_(r) {}

    void node(const Proof& n) {
        ++r_.nodes;
        switch (n->kind) {
            case RuleKind::BasicAxiom: lint(n); break;
            case RuleKind::Induction:
            case RuleKind::TI: break;
            case RuleKind::Or: single(n, child(n->formula, n->pick)); break;
            case RuleKind::Exists: single(n, instance(n->formula, n->witness)); break;
            case RuleKind::Forall: {
                std::set<std::string> fv;
                for (const auto& f : n->conclusion) free_vars(f, fv);
                if (fv.count(n->var))
                    error(n, "eigenvariable " + n->var + " occurs free in the conclusion of rule forall");
                single(n, instance(n->formula, var(n->var)));
                break;
            }
            case RuleKind::And:
                principal(n);
                premise(n, 0, n->formula->left);
                premise(n, 1, n->formula->right);
                break;
            case RuleKind::Cut:
                premise(n, 0, negate(n->formula));
                premise(n, 1, n->formula);
                if (!is_literal(n->formula)) {
                    ++r_.compound_cuts;
                    r_.notes.push_back({n->id, n->line, "compound cut on " + render(n->formula)});
                }
                break;
        }
        for (const auto& q : n->premises) node(q);
    }

private:
    void error(const Proof& n, std::string msg) { r_.errors.push_back({n->id, n->line, std::move(msg)}); }

    void principal(const Proof& n) {
        if (!sequent_contains(n->conclusion, n->formula))
            error(n, "principal formula " + render(n->formula) + " is not in the conclusion");
    }

    void single(const Proof& n, const Formula& k) {
        principal(n);
        premise(n, 0, k);
    }

    // The premise holds k and otherwise only formulas of the conclusion.
    void premise(const Proof& n, std::size_t i, const Formula& k) {
        const auto& p = n->premises[i]->conclusion;
        if (!sequent_contains(p, k))
            error(n, "premise " + std::to_string(i + 1) + " of rule " + render(n->kind) + " lacks " + render(k));
        for (const auto& f : p)
            if (!formula_equal(f, k) && !sequent_contains(n->conclusion, f))
                error(n, "premise " + std::to_string(i + 1) + " of rule " + render(n->kind) + " has " + render(f) +
                             ", which is not in the conclusion");
    }

    void lint(const Proof& n) {
        std::set<std::string> fvs;
        for (const auto& f : n->conclusion) free_vars(f, fvs);
        std::vector<std::string> vars(fvs.begin(), fvs.end());
        std::uint64_t bound = opt_.lint_bound;
        // Keep the instantiation count near a million.
        auto total = [&](std::uint64_t b) {
            long double t = 1;
            for (std::size_t i = 0; i < vars.size(); ++i) t *= static_cast<long double>(b);
            return t;
        };
        while (bound > 1 && total(bound) > 1e6) --bound;
        if (bound < opt_.lint_bound)
            r_.notes.push_back({n->id, n->line, "basic axiom linted up to " + std::to_string(bound) + " per variable"});
        std::vector<std::uint64_t> val(vars.size(), 0);
        while (true) {
            if (!some_literal_true(n->conclusion, vars, val)) {
                std::string at;
                for (std::size_t i = 0; i < vars.size(); ++i)
                    at += (i ? ", " : "") + vars[i] + "=" + std::to_string(val[i]);
                error(n, "basic axiom has no true literal" + (at.empty() ? std::string() : " at " + at));
                return;
            }
            std::size_t i = 0;
            while (i < vars.size() && ++val[i] == bound) val[i++] = 0;
            if (i == vars.size()) return;
        }
    }

    bool some_literal_true(const std::vector<Formula>& s, const std::vector<std::string>& vars,
                           const std::vector<std::uint64_t>& val) {
        for (const auto& f : s) {
            if (!is_literal(f)) continue;
            Formula g = f;
            for (std::size_t i = 0; i < vars.size(); ++i) g = subst(g, vars[i], num(val[i]));
            if (literal_true(pf_.sig, g)) return true;
        }
        return false;
    }

    const ProofFile& pf_;
    const CheckOptions& opt_;
    CheckReport& r_;
};

}  // namespace

CheckReport check_proof(const ProofFile& pf, const CheckOptions& opt) {
    CheckReport r;
    Checker c(pf, opt, r);
    c.node(pf.root);
    if (pf.goal) {
        for (const auto& f : *pf.goal)
            if (!sequent_contains(pf.root->conclusion, f))
                r.errors.push_back({0, pf.root->line, "goal formula " + render(f) + " is not proved"});
        for (const auto& f : pf.root->conclusion)
            if (!sequent_contains(*pf.goal, f))
                r.errors.push_back({0, pf.root->line, "proof concludes " + render(f) + ", which is not in the goal"});
    }
    return r;
}

}  // namespace pagame

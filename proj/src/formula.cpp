#include "pagame/formula.hpp"

#include "pagame/errors.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

namespace pagame {

namespace {

std::size_t mix(std::size_t h, std::size_t v) { return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2)); }

std::size_t str_hash(const std::string& s) { return std::hash<std::string>{}(s); }

const std::set<std::string> kBuiltins = {"add", "mul", "monus"};

bool is_identifier(const std::string& s) {
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    return std::all_of(s.begin(), s.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
    });
}

bool is_digits(const std::string& s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

}  // namespace

// ---------------------------------------------------------------------------
// Terms

Term var(std::string name) {
    auto n = std::make_shared<TermNode>();
    n->kind = TermNode::Kind::Var;
    n->name = std::move(name);
    // Variables share one hash so that formula hashes ignore bound names.
    n->hash = 0x51ed27;
    return n;
}

Term num(const Nat& v) {
    if (v < 0) throw std::invalid_argument("negative numeral");
    auto n = std::make_shared<TermNode>();
    n->kind = TermNode::Kind::Num;
    n->value = v;
    n->hash = mix(0xa11ce, std::hash<std::string>{}(v.str()));
    return n;
}

Term succ(Term t) {
    if (t->kind == TermNode::Kind::Num) return num(t->value + 1);
    auto n = std::make_shared<TermNode>();
    n->kind = TermNode::Kind::Succ;
    n->hash = mix(0x5cc, t->hash);
    n->args.push_back(std::move(t));
    return n;
}

Term app(std::string symbol, std::vector<Term> args) {
    auto n = std::make_shared<TermNode>();
    n->kind = TermNode::Kind::App;
    n->hash = str_hash(symbol);
    for (const auto& a : args) n->hash = mix(n->hash, a->hash);
    n->name = std::move(symbol);
    n->args = std::move(args);
    return n;
}

bool term_equal(const Term& a, const Term& b) {
    if (a == b) return true;
    if (a->kind != b->kind || a->hash != b->hash) return false;
    switch (a->kind) {
        case TermNode::Kind::Var:
            return a->name == b->name;
        case TermNode::Kind::Num:
            return a->value == b->value;
        case TermNode::Kind::Succ:
        case TermNode::Kind::App:
            if (a->name != b->name || a->args.size() != b->args.size()) return false;
            for (std::size_t i = 0; i < a->args.size(); ++i)
                if (!term_equal(a->args[i], b->args[i])) return false;
            return true;
    }
    return false;
}

bool is_numeral(const Term& t) { return t->kind == TermNode::Kind::Num; }

void free_vars(const Term& t, std::set<std::string>& out) {
    if (t->kind == TermNode::Kind::Var) {
        out.insert(t->name);
        return;
    }
    for (const auto& a : t->args) free_vars(a, out);
}

bool is_closed(const Term& t) {
    if (t->kind == TermNode::Kind::Var) return false;
    return std::all_of(t->args.begin(), t->args.end(), [](const Term& a) { return is_closed(a); });
}

Term subst(const Term& t, const std::string& x, const Term& by) {
    switch (t->kind) {
        case TermNode::Kind::Var:
            return t->name == x ? by : t;
        case TermNode::Kind::Num:
            return t;
        case TermNode::Kind::Succ:
            return succ(subst(t->args[0], x, by));
        case TermNode::Kind::App: {
            std::vector<Term> args;
            args.reserve(t->args.size());
            for (const auto& a : t->args) args.push_back(subst(a, x, by));
            return app(t->name, std::move(args));
        }
    }
    return t;
}

std::string render(const Term& t) {
    switch (t->kind) {
        case TermNode::Kind::Var:
            return t->name;
        case TermNode::Kind::Num:
            return t->value.str();
        case TermNode::Kind::Succ:
            return "(S " + render(t->args[0]) + ")";
        case TermNode::Kind::App: {
            std::string out = "(" + t->name;
            for (const auto& a : t->args) out += " " + render(a);
            return out + ")";
        }
    }
    return "";
}

void Signature::define(const std::string& name, std::vector<std::string> params, Term body) {
    if (!is_identifier(name) || name == "S" || name == "ord") throw UserError("bad function symbol name: " + name);
    if (kBuiltins.count(name) || defs_.count(name)) throw UserError("function symbol defined twice: " + name);
    std::set<std::string> seen;
    for (const auto& p : params)
        if (!seen.insert(p).second) throw UserError("repeated parameter in definition of " + name);
    std::set<std::string> fv;
    free_vars(body, fv);
    for (const auto& v : fv)
        if (!seen.count(v)) throw UserError("definition of " + name + " uses unbound variable " + v);
    // Only earlier symbols are visible, which keeps definitions acyclic.
    check_term(body);
    defs_[name] = Def{std::move(params), std::move(body)};
    order_.push_back(name);
}

std::optional<std::size_t> Signature::arity(const std::string& name) const {
    if (kBuiltins.count(name)) return 2;
    auto it = defs_.find(name);
    if (it == defs_.end()) return std::nullopt;
    return it->second.params.size();
}

void Signature::check_term(const Term& t) const {
    if (t->kind == TermNode::Kind::App) {
        auto a = arity(t->name);
        if (!a) throw UserError("unknown function symbol: " + t->name);
        if (*a != t->args.size())
            throw UserError("function symbol " + t->name + " expects " + std::to_string(*a) + " arguments");
    }
    for (const auto& a : t->args) check_term(a);
}

Nat Signature::eval(const Term& t) const { return eval(t, {}); }

Nat Signature::eval(const Term& t, const std::map<std::string, Nat>& env) const {
    switch (t->kind) {
        case TermNode::Kind::Var: {
            auto it = env.find(t->name);
            if (it == env.end()) throw UserError("cannot evaluate open term: free variable " + t->name);
            return it->second;
        }
        case TermNode::Kind::Num:
            return t->value;
        case TermNode::Kind::Succ:
            return eval(t->args[0], env) + 1;
        case TermNode::Kind::App: {
            std::vector<Nat> v;
            v.reserve(t->args.size());
            for (const auto& a : t->args) v.push_back(eval(a, env));
            if (t->name == "add") return v[0] + v[1];
            if (t->name == "mul") return v[0] * v[1];
            if (t->name == "monus") return v[0] > v[1] ? Nat(v[0] - v[1]) : Nat(0);
            auto it = defs_.find(t->name);
            if (it == defs_.end()) throw UserError("unknown function symbol: " + t->name);
            std::map<std::string, Nat> inner;
            for (std::size_t i = 0; i < v.size(); ++i) inner[it->second.params[i]] = v[i];
            return eval(it->second.body, inner);
        }
    }
    return 0;
}

// ---------------------------------------------------------------------------
// Formulas

namespace {

Formula literal(FKind k, Term a, Term b) {
    auto n = std::make_shared<FormulaNode>();
    n->kind = k;
    n->hash = mix(mix(static_cast<std::size_t>(k) + 1, a->hash), b->hash);
    n->lhs = std::move(a);
    n->rhs = std::move(b);
    return n;
}

Formula binary(FKind k, Formula a, Formula b) {
    auto n = std::make_shared<FormulaNode>();
    n->kind = k;
    n->hash = mix(mix(static_cast<std::size_t>(k) + 1, a->hash), b->hash);
    n->left = std::move(a);
    n->right = std::move(b);
    return n;
}

Formula quantifier(FKind k, std::string x, Formula body) {
    if (!is_identifier(x)) throw UserError("bad variable name: " + x);
    auto n = std::make_shared<FormulaNode>();
    n->kind = k;
    n->hash = mix(static_cast<std::size_t>(k) + 1, body->hash);
    n->var = std::move(x);
    n->body = std::move(body);
    return n;
}

using Binding = std::vector<std::pair<std::string, std::string>>;

// Position of the innermost binder for a name on one side, or -1 when free.
long bound_index(const Binding& b, const std::string& name, bool first) {
    for (std::size_t i = b.size(); i-- > 0;)
        if ((first ? b[i].first : b[i].second) == name) return static_cast<long>(i);
    return -1;
}

bool term_alpha(const Term& a, const Term& b, const Binding& bind) {
    if (a->kind != b->kind || a->hash != b->hash) return false;
    switch (a->kind) {
        case TermNode::Kind::Var: {
            long i = bound_index(bind, a->name, true);
            long j = bound_index(bind, b->name, false);
            if (i != j) return false;
            return i >= 0 || a->name == b->name;
        }
        case TermNode::Kind::Num:
            return a->value == b->value;
        default:
            if (a->name != b->name || a->args.size() != b->args.size()) return false;
            for (std::size_t i = 0; i < a->args.size(); ++i)
                if (!term_alpha(a->args[i], b->args[i], bind)) return false;
            return true;
    }
}

bool formula_alpha(const Formula& a, const Formula& b, Binding& bind) {
    if (a == b && bind.empty()) return true;
    if (a->kind != b->kind || a->hash != b->hash) return false;
    switch (a->kind) {
        case FKind::Eq:
        case FKind::Neq:
        case FKind::Olt:
        case FKind::Nolt:
            return term_alpha(a->lhs, b->lhs, bind) && term_alpha(a->rhs, b->rhs, bind);
        case FKind::Or:
        case FKind::And:
            return formula_alpha(a->left, b->left, bind) && formula_alpha(a->right, b->right, bind);
        case FKind::Exists:
        case FKind::Forall: {
            bind.emplace_back(a->var, b->var);
            bool r = formula_alpha(a->body, b->body, bind);
            bind.pop_back();
            return r;
        }
    }
    return false;
}

std::string fresh_name(const std::string& base, const std::set<std::string>& avoid) {
    for (int i = 1;; ++i) {
        std::string c = base + std::to_string(i);
        if (!avoid.count(c)) return c;
    }
}

}  // namespace

Formula eq(Term a, Term b) { return literal(FKind::Eq, std::move(a), std::move(b)); }
Formula neq(Term a, Term b) { return literal(FKind::Neq, std::move(a), std::move(b)); }
Formula olt(Term a, Term b) { return literal(FKind::Olt, std::move(a), std::move(b)); }
Formula nolt(Term a, Term b) { return literal(FKind::Nolt, std::move(a), std::move(b)); }
Formula lor(Formula a, Formula b) { return binary(FKind::Or, std::move(a), std::move(b)); }
Formula land(Formula a, Formula b) { return binary(FKind::And, std::move(a), std::move(b)); }
Formula exists(std::string x, Formula body) { return quantifier(FKind::Exists, std::move(x), std::move(body)); }
Formula forall(std::string x, Formula body) { return quantifier(FKind::Forall, std::move(x), std::move(body)); }

Formula negate(const Formula& f) {
    switch (f->kind) {
        case FKind::Eq: return neq(f->lhs, f->rhs);
        case FKind::Neq: return eq(f->lhs, f->rhs);
        case FKind::Olt: return nolt(f->lhs, f->rhs);
        case FKind::Nolt: return olt(f->lhs, f->rhs);
        case FKind::Or: return land(negate(f->left), negate(f->right));
        case FKind::And: return lor(negate(f->left), negate(f->right));
        case FKind::Exists: return forall(f->var, negate(f->body));
        case FKind::Forall: return exists(f->var, negate(f->body));
    }
    return f;
}

bool formula_equal(const Formula& a, const Formula& b) {
    if (a == b) return true;
    Binding bind;
    return formula_alpha(a, b, bind);
}

void free_vars(const Formula& f, std::set<std::string>& out) {
    switch (f->kind) {
        case FKind::Eq:
        case FKind::Neq:
        case FKind::Olt:
        case FKind::Nolt:
            free_vars(f->lhs, out);
            free_vars(f->rhs, out);
            return;
        case FKind::Or:
        case FKind::And:
            free_vars(f->left, out);
            free_vars(f->right, out);
            return;
        case FKind::Exists:
        case FKind::Forall: {
            std::set<std::string> inner;
            free_vars(f->body, inner);
            inner.erase(f->var);
            out.insert(inner.begin(), inner.end());
            return;
        }
    }
}

bool is_closed(const Formula& f) {
    std::set<std::string> fv;
    free_vars(f, fv);
    return fv.empty();
}

Formula subst(const Formula& f, const std::string& x, const Term& by) {
    switch (f->kind) {
        case FKind::Eq:
        case FKind::Neq:
        case FKind::Olt:
        case FKind::Nolt:
            return literal(f->kind, subst(f->lhs, x, by), subst(f->rhs, x, by));
        case FKind::Or:
        case FKind::And:
            return binary(f->kind, subst(f->left, x, by), subst(f->right, x, by));
        case FKind::Exists:
        case FKind::Forall: {
            if (f->var == x) return f;
            std::set<std::string> body_fv;
            free_vars(f->body, body_fv);
            if (!body_fv.count(x)) return f;
            std::set<std::string> by_fv;
            free_vars(by, by_fv);
            if (!by_fv.count(f->var)) return quantifier(f->kind, f->var, subst(f->body, x, by));
            std::set<std::string> avoid = body_fv;
            avoid.insert(by_fv.begin(), by_fv.end());
            avoid.insert(x);
            std::string y = fresh_name(f->var, avoid);
            Formula renamed = subst(f->body, f->var, var(y));
            return quantifier(f->kind, y, subst(renamed, x, by));
        }
    }
    return f;
}

std::string render(const Formula& f) {
    switch (f->kind) {
        case FKind::Eq: return "(= " + render(f->lhs) + " " + render(f->rhs) + ")";
        case FKind::Neq: return "(neq " + render(f->lhs) + " " + render(f->rhs) + ")";
        case FKind::Olt: return "(olt " + render(f->lhs) + " " + render(f->rhs) + ")";
        case FKind::Nolt: return "(nolt " + render(f->lhs) + " " + render(f->rhs) + ")";
        case FKind::Or: return "(or " + render(f->left) + " " + render(f->right) + ")";
        case FKind::And: return "(and " + render(f->left) + " " + render(f->right) + ")";
        case FKind::Exists: return "(exists " + f->var + " " + render(f->body) + ")";
        case FKind::Forall: return "(forall " + f->var + " " + render(f->body) + ")";
    }
    return "";
}

void check_formula(const Signature& sig, const Formula& f) {
    switch (f->kind) {
        case FKind::Eq:
        case FKind::Neq:
        case FKind::Olt:
        case FKind::Nolt:
            sig.check_term(f->lhs);
            sig.check_term(f->rhs);
            return;
        case FKind::Or:
        case FKind::And:
            check_formula(sig, f->left);
            check_formula(sig, f->right);
            return;
        case FKind::Exists:
        case FKind::Forall:
            check_formula(sig, f->body);
            return;
    }
}

Polarity polarity(const Formula& f) {
    switch (f->kind) {
        case FKind::Or:
        case FKind::Exists:
            return Polarity::Disjunctive;
        case FKind::And:
        case FKind::Forall:
            return Polarity::Conjunctive;
        default:
            return Polarity::Literal;
    }
}

bool is_literal(const Formula& f) { return polarity(f) == Polarity::Literal; }

unsigned rank(const Formula& f) {
    switch (f->kind) {
        case FKind::Or:
        case FKind::And:
            return 1 + std::max(rank(f->left), rank(f->right));
        case FKind::Exists:
        case FKind::Forall:
            return 1 + rank(f->body);
        default:
            return 0;
    }
}

bool literal_true(const Signature& sig, const Formula& f) {
    switch (f->kind) {
        case FKind::Eq: return sig.eval(f->lhs) == sig.eval(f->rhs);
        case FKind::Neq: return sig.eval(f->lhs) != sig.eval(f->rhs);
        case FKind::Olt:
        case FKind::Nolt: {
            auto a = decode_ordinal(sig.eval(f->lhs));
            auto b = decode_ordinal(sig.eval(f->rhs));
            bool less = a && b && *a < *b;
            return f->kind == FKind::Olt ? less : !less;
        }
        default:
            throw std::invalid_argument("not a literal: " + render(f));
    }
}

// ---------------------------------------------------------------------------
// Addresses

bool operator<(const Selector& a, const Selector& b) {
    if (a.kind != b.kind) return a.kind < b.kind;
    return a.index < b.index;
}

std::string render(const Selector& s) {
    switch (s.kind) {
        case Selector::Kind::Left: return "L";
        case Selector::Kind::Right: return "R";
        case Selector::Kind::Index: return s.index.str();
    }
    return "";
}

std::string render(const NodeAddress& a) {
    std::string out = "<";
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (i) out += ",";
        out += render(a[i]);
    }
    return out + ">";
}

NodeAddress parse_address(std::string_view text) {
    if (text.size() < 2 || text.front() != '<' || text.back() != '>') throw ParseError("bad node address");
    NodeAddress out;
    std::string_view inner = text.substr(1, text.size() - 2);
    while (!inner.empty()) {
        auto comma = inner.find(',');
        std::string item(inner.substr(0, comma));
        if (item == "L") out.push_back(Selector::left());
        else if (item == "R") out.push_back(Selector::right());
        else if (is_digits(item)) out.push_back(Selector::at(Nat(item)));
        else throw ParseError("bad node address selector: " + item);
        if (comma == std::string_view::npos) break;
        inner.remove_prefix(comma + 1);
    }
    return out;
}

Formula child(const Formula& f, const Selector& s) {
    switch (f->kind) {
        case FKind::Or:
        case FKind::And:
            if (s.kind == Selector::Kind::Left) return f->left;
            if (s.kind == Selector::Kind::Right) return f->right;
            break;
        case FKind::Exists:
        case FKind::Forall:
            if (s.kind == Selector::Kind::Index) return subst(f->body, f->var, num(s.index));
            break;
        default:
            break;
    }
    throw std::invalid_argument("selector " + render(s) + " does not apply to " + render(f));
}

Formula instance(const Formula& f, const Term& t) {
    if (f->kind != FKind::Exists && f->kind != FKind::Forall)
        throw std::invalid_argument("not a quantifier: " + render(f));
    return subst(f->body, f->var, t);
}

Formula subformula_at(const Formula& f, const NodeAddress& a) {
    Formula cur = f;
    for (const auto& s : a) cur = child(cur, s);
    return cur;
}

bool is_prefix(const NodeAddress& a, const NodeAddress& b) {
    return a.size() <= b.size() && std::equal(a.begin(), a.end(), b.begin());
}

namespace {

unsigned step_depth(const Formula& parent, const Formula& kid, unsigned d) {
    if (is_literal(kid)) return d + 1;
    return polarity(kid) == polarity(parent) ? d : d + 1;
}

unsigned depth_rec(const Formula& f, unsigned d) {
    switch (f->kind) {
        case FKind::Or:
        case FKind::And:
            return std::max(depth_rec(f->left, step_depth(f, f->left, d)), depth_rec(f->right, step_depth(f, f->right, d)));
        case FKind::Exists:
        case FKind::Forall:
            return depth_rec(f->body, step_depth(f, f->body, d));
        default:
            return d;
    }
}

}  // namespace

unsigned node_depth(const Formula& f, const NodeAddress& a) {
    Formula cur = f;
    unsigned d = 0;
    for (const auto& s : a) {
        Formula next = child(cur, s);
        d = step_depth(cur, next, d);
        cur = next;
    }
    return d;
}

unsigned formula_depth(const Formula& f) { return depth_rec(f, 0); }

bool is_minimal(const Formula& f, const NodeAddress& a) {
    if (a.empty()) return true;
    NodeAddress parent(a.begin(), a.end() - 1);
    return node_depth(f, parent) < node_depth(f, a);
}

bool minimal_successor(const Formula& f, const NodeAddress& a, const NodeAddress& b) {
    return a.size() < b.size() && is_prefix(a, b) && is_minimal(f, a) && is_minimal(f, b) &&
           node_depth(f, b) == node_depth(f, a) + 1;
}

namespace {

bool parity_set(const Formula& f, const std::set<NodeAddress>& s, unsigned branching_parity) {
    for (const auto& a : s) {
        if (!is_minimal(f, a)) return false;
        if (!a.empty()) {
            // The minimal predecessor: the longest minimal proper prefix one level up.
            unsigned d = node_depth(f, a);
            bool found = false;
            for (std::size_t k = a.size(); k-- > 0;) {
                NodeAddress p(a.begin(), a.begin() + static_cast<long>(k));
                if (is_minimal(f, p) && node_depth(f, p) + 1 == d) {
                    if (!s.count(p)) return false;
                    found = true;
                    break;
                }
            }
            if (!found) return false;
        }
        if (node_depth(f, a) % 2 == branching_parity) {
            int succs = 0;
            for (const auto& b : s)
                if (minimal_successor(f, a, b)) ++succs;
            if (succs != 1) return false;
        }
    }
    return true;
}

}  // namespace

bool is_odd_set(const Formula& f, const std::set<NodeAddress>& s) { return parity_set(f, s, 1); }

bool is_even_set(const Formula& f, const std::set<NodeAddress>& s) { return parity_set(f, s, 0); }

// ---------------------------------------------------------------------------
// Text syntax

Term parse_term(const Sexpr& e) {
    if (e.is_atom()) {
        if (is_digits(e.text)) return num(Nat(e.text));
        if (is_identifier(e.text)) return var(e.text);
        throw ParseError("line " + std::to_string(e.line) + ": bad term atom: " + e.text);
    }
    if (!e.is_list() || e.items.empty() || !e.items[0].is_atom())
        throw ParseError("line " + std::to_string(e.line) + ": bad term: " + render(e));
    const std::string& h = e.items[0].text;
    if (h == "S") {
        if (e.items.size() != 2) throw ParseError("line " + std::to_string(e.line) + ": S takes one argument");
        return succ(parse_term(e.items[1]));
    }
    if (h == "ord") {
        if (e.items.size() != 2 || e.items[1].kind == Sexpr::Kind::List)
            throw ParseError("line " + std::to_string(e.line) + ": ord takes one ordinal notation");
        return num(encode_ordinal(eval_ordinal_expr(e.items[1].text)));
    }
    if (!is_identifier(h)) throw ParseError("line " + std::to_string(e.line) + ": bad function symbol: " + h);
    std::vector<Term> args;
    for (std::size_t i = 1; i < e.items.size(); ++i) args.push_back(parse_term(e.items[i]));
    return app(h, std::move(args));
}

Formula parse_formula(const Sexpr& e, const FormulaMacros* macros) {
    auto where = [&] { return "line " + std::to_string(e.line) + ": "; };
    if (e.is_atom()) {
        if (macros) {
            auto it = macros->find(e.text);
            if (it != macros->end() && it->second.params.empty()) return it->second.body;
        }
        throw ParseError(where() + "unknown formula name: " + e.text);
    }
    if (!e.is_list() || e.items.empty() || !e.items[0].is_atom()) throw ParseError(where() + "bad formula: " + render(e));
    const std::string& h = e.items[0].text;
    auto n = e.items.size();
    auto need = [&](std::size_t k) {
        if (n != k) throw ParseError(where() + h + " expects " + std::to_string(k - 1) + " arguments");
    };
    if (h == "=" || h == "neq" || h == "!=" || h == "olt" || h == "nolt") {
        need(3);
        Term a = parse_term(e.items[1]);
        Term b = parse_term(e.items[2]);
        if (h == "=") return eq(a, b);
        if (h == "olt") return olt(a, b);
        if (h == "nolt") return nolt(a, b);
        return neq(a, b);
    }
    if (h == "or" || h == "and") {
        if (n < 3) throw ParseError(where() + h + " expects at least two arguments");
        Formula acc = parse_formula(e.items[n - 1], macros);
        for (std::size_t i = n - 1; i-- > 1;) {
            Formula lhs = parse_formula(e.items[i], macros);
            acc = h == "or" ? lor(lhs, acc) : land(lhs, acc);
        }
        return acc;
    }
    if (h == "exists" || h == "forall") {
        need(3);
        if (!e.items[1].is_atom() || !is_identifier(e.items[1].text)) throw ParseError(where() + "bad bound variable");
        Formula body = parse_formula(e.items[2], macros);
        return h == "exists" ? exists(e.items[1].text, body) : forall(e.items[1].text, body);
    }
    if (h == "not") {
        need(2);
        return negate(parse_formula(e.items[1], macros));
    }
    if (macros) {
        auto it = macros->find(h);
        if (it != macros->end()) {
            const auto& m = it->second;
            if (m.params.size() != n - 1)
                throw ParseError(where() + h + " expects " + std::to_string(m.params.size()) + " arguments");
            // Simultaneous substitution via fresh intermediate names.
            Formula out = m.body;
            std::vector<std::string> tmp;
            for (std::size_t i = 0; i < m.params.size(); ++i) {
                tmp.push_back("__arg" + std::to_string(i));
                out = subst(out, m.params[i], var(tmp.back()));
            }
            for (std::size_t i = 0; i < m.params.size(); ++i) out = subst(out, tmp[i], parse_term(e.items[i + 1]));
            return out;
        }
    }
    throw ParseError(where() + "unknown formula constructor: " + h);
}

Formula parse_formula(std::string_view text) { return parse_formula(parse_sexpr(text)); }

Term parse_term(std::string_view text) { return parse_term(parse_sexpr(text)); }

}  // namespace pagame

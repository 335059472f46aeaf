#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace pagame {

// Minimal S-expression tree: atoms, quoted strings and lists. ';' starts a comment.
struct Sexpr {
    enum class Kind { Atom, String, List };
    Kind kind = Kind::Atom;
    std::string text;
    std::vector<Sexpr> items;
    int line = 0;

    bool is_atom() const { return kind == Kind::Atom; }
    bool is_atom(std::string_view s) const { return kind == Kind::Atom && text == s; }
    bool is_list() const { return kind == Kind::List; }
    // The head atom of a list, or "" for atoms and empty lists.
    std::string head() const;
};

std::vector<Sexpr> parse_sexprs(std::string_view text);
Sexpr parse_sexpr(std::string_view text);
std::string render(const Sexpr& e);

}  // namespace pagame

#include "pagame/sexpr.hpp"

#include "pagame/errors.hpp"

#include <cctype>

namespace pagame {

std::string Sexpr::head() const {
    if (kind != Kind::List || items.empty() || !items.front().is_atom()) return "";
    return items.front().text;
}

namespace {

class Reader {
public:
    explicit Reader(std::string_view s) : s_(s) {}

    bool at_end() {
        skip();
        return pos_ >= s_.size();
    }

    Sexpr read() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        char c = s_[pos_];
        Sexpr e;
        e.line = line_;
        if (c == '(') {
            ++pos_;
            e.kind = Sexpr::Kind::List;
            while (true) {
                skip();
                if (pos_ >= s_.size()) fail("unclosed '('");
                if (s_[pos_] == ')') {
                    ++pos_;
                    return e;
                }
                e.items.push_back(read());
            }
        }
        if (c == ')') fail("unexpected ')'");
        if (c == '"') {
            ++pos_;
            e.kind = Sexpr::Kind::String;
            while (pos_ < s_.size() && s_[pos_] != '"') {
                if (s_[pos_] == '\\' && pos_ + 1 < s_.size()) ++pos_;
                e.text += s_[pos_++];
            }
            if (pos_ >= s_.size()) fail("unterminated string");
            ++pos_;
            return e;
        }
        while (pos_ < s_.size() && !std::isspace(static_cast<unsigned char>(s_[pos_])) && s_[pos_] != '(' &&
               s_[pos_] != ')' && s_[pos_] != ';' && s_[pos_] != '"')
            e.text += s_[pos_++];
        return e;
    }

private:
    void skip() {
        while (pos_ < s_.size()) {
            char c = s_[pos_];
            if (c == '\n') {
                ++line_;
                ++pos_;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos_;
            } else if (c == ';') {
                while (pos_ < s_.size() && s_[pos_] != '\n') ++pos_;
            } else {
                break;
            }
        }
    }

    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError("line " + std::to_string(line_) + ": " + what);
    }

    std::string_view s_;
    std::size_t pos_ = 0;
    int line_ = 1;
};

}  // namespace

std::vector<Sexpr> parse_sexprs(std::string_view text) {
    Reader r(text);
    std::vector<Sexpr> out;
    while (!r.at_end()) out.push_back(r.read());
    return out;
}

Sexpr parse_sexpr(std::string_view text) {
    auto all = parse_sexprs(text);
    if (all.size() != 1) throw ParseError("expected exactly one expression, found " + std::to_string(all.size()));
    return std::move(all.front());
}

std::string render(const Sexpr& e) {
    switch (e.kind) {
        case Sexpr::Kind::Atom:
            return e.text;
        case Sexpr::Kind::String: {
            std::string out = "\"";
            for (char c : e.text) {
                if (c == '"' || c == '\\') out += '\\';
                out += c;
            }
            return out + "\"";
        }
        case Sexpr::Kind::List: {
            std::string out = "(";
            for (std::size_t i = 0; i < e.items.size(); ++i) {
                if (i) out += ' ';
                out += render(e.items[i]);
            }
            return out + ")";
        }
    }
    return "";
}

}  // namespace pagame

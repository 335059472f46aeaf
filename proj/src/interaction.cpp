#include "pagame/interaction.hpp"

#include "pagame/errors.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <tuple>

namespace pagame {

bool is_pointer(const PointerSeq& i) {
    for (std::size_t n = 0; n < i.size(); ++n) {
        if (n == 0 ? i[0] != 0 : i[n] >= n) return false;
    }
    return true;
}

IndexSet view_V(const PointerSeq& i, std::size_t n) {
    if (n > i.size()) throw std::out_of_range("view_V beyond the sequence");
    IndexSet out;
    while (n > 0) {
        out.insert(n - 1);
        n = i[n - 1];
    }
    return out;
}

IndexSet view_W(const PointerSeq& i, std::size_t n) {
    if (n > i.size()) throw std::out_of_range("view_W beyond the sequence");
    IndexSet out;
    while (n > 0) {
        out.insert(n - 1);
        out.insert(i[n - 1]);
        n = i[n - 1];
    }
    return out;
}

bool is_interaction(const PointerSeq& i) {
    if (!is_pointer(i)) return false;
    for (std::size_t n = 0; n + 1 < i.size(); ++n)
        if (!view_V(i, n + 1).count(i[n + 1])) return false;
    return true;
}

std::size_t index_depth(const PointerSeq& i, std::size_t m) {
    std::size_t d = 0;
    while (m != 0) {
        m = i.at(m);
        ++d;
    }
    return d;
}

std::size_t seq_depth(const PointerSeq& i) {
    std::size_t d = 0;
    for (std::size_t m = 0; m < i.size(); ++m) d = std::max(d, index_depth(i, m));
    return d;
}

bool is_isolated(const PointerSeq& i, const IndexSet& I) {
    for (std::size_t n = 0; n < i.size(); ++n)
        if (I.count(i[n]) && !I.count(n)) return false;
    return true;
}

PointerSeq remove_indices(const PointerSeq& i, const IndexSet& I) {
    std::vector<std::size_t> e;  // enumeration of the complement
    std::vector<long> inv(i.size(), -1);
    for (std::size_t n = 0; n < i.size(); ++n) {
        if (!I.count(n)) {
            inv[n] = static_cast<long>(e.size());
            e.push_back(n);
        }
    }
    PointerSeq j;
    j.reserve(e.size());
    for (std::size_t k = 0; k < e.size(); ++k) {
        long t = inv[i[e[k]]];
        if (t < 0) throw std::invalid_argument("remove_indices: index set is not isolated");
        j.push_back(static_cast<std::size_t>(t));
    }
    return j;
}

IndexSet interval(const PointerSeq& i, std::size_t m) {
    IndexSet out;
    for (std::size_t k = i.at(m); k <= m; ++k) out.insert(k);
    return out;
}

bool is_unreferenced(const PointerSeq& i, std::size_t m) {
    for (std::size_t n = m + 1; n < i.size(); ++n)
        if (i[n] == m) return false;
    return true;
}

std::vector<PointerSeq> enumerate_interaction(std::size_t length) {
    std::vector<PointerSeq> out;
    if (length == 0) {
        out.push_back({});
        return out;
    }
    std::vector<PointerSeq> frontier{{0}};
    for (std::size_t len = 1; len < length; ++len) {
        std::vector<PointerSeq> next;
        for (const auto& s : frontier) {
            for (std::size_t v : view_V(s, len)) {
                PointerSeq t = s;
                t.push_back(v);
                next.push_back(std::move(t));
            }
        }
        frontier = std::move(next);
    }
    return frontier;
}

PointerSeq zigzag_sequence(std::size_t length) {
    PointerSeq i;
    for (std::size_t n = 0; n < length; ++n) {
        if (n <= 1) i.push_back(0);
        else if (n % 2 == 1) i.push_back(2);
        else i.push_back(n - 1);
    }
    return i;
}

std::string render(const PointerSeq& i) {
    std::string out;
    for (std::size_t n = 0; n < i.size(); ++n) {
        if (n) out += " ";
        out += std::to_string(i[n]);
    }
    return "[" + out + "]";
}

std::string check_views(const PointerSeq& i) {
    for (std::size_t n = 0; n <= i.size(); ++n) {
        IndexSet v = view_V(i, n);
        for (std::size_t m : v) {
            IndexSet inner = view_V(i, i[m]);
            if (!std::includes(v.begin(), v.end(), inner.begin(), inner.end()))
                return render(i) + ": V(i_" + std::to_string(m) + ") not inside V(" + std::to_string(n) + ")";
            for (std::size_t k : v)
                if (k < m && !inner.count(k))
                    return render(i) + ": " + std::to_string(k) + " in V(" + std::to_string(n) + ") but not in V(i_" +
                           std::to_string(m) + ")";
        }
    }
    return {};
}

std::string check_intervals(const PointerSeq& i) {
    for (std::size_t m = 0; m < i.size(); ++m) {
        if (is_unreferenced(i, m) && !is_isolated(i, interval(i, m)))
            return render(i) + ": interval ending at " + std::to_string(m) + " is not isolated";
    }
    return {};
}

std::string check_removal_closure(const PointerSeq& i) {
    std::vector<IndexSet> isolated;
    for (std::size_t m = 0; m < i.size(); ++m)
        if (is_unreferenced(i, m)) isolated.push_back(interval(i, m));
    std::size_t k = isolated.size();
    for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
        IndexSet I;
        for (std::size_t b = 0; b < k; ++b)
            if (mask & (std::size_t{1} << b)) I.insert(isolated[b].begin(), isolated[b].end());
        if (!is_isolated(i, I)) return render(i) + ": union of isolated intervals is not isolated";
        PointerSeq j = remove_indices(i, I);
        if (!j.empty() && !is_interaction(j))
            return render(i) + ": removal result " + render(j) + " is not an interaction sequence";
    }
    return {};
}

// ---------------------------------------------------------------------------

bool ois_valid(const OrdIntSeq& u) {
    if (u.ords.size() != u.ptr.size() + 1) return false;
    if (!is_interaction(u.ptr)) return false;
    for (std::size_t m = 1; m < u.ptr.size(); ++m)
        if (!(u.ords[m + 1] < u.ords[u.ptr[m]])) return false;
    return true;
}

OrdIntSeq ois_prefix(const OrdIntSeq& u, std::size_t m) {
    if (m > u.length()) throw std::out_of_range("ois_prefix");
    OrdIntSeq out;
    out.ords.assign(u.ords.begin(), u.ords.begin() + static_cast<long>(m) + 1);
    out.ptr.assign(u.ptr.begin(), u.ptr.begin() + static_cast<long>(m));
    return out;
}

bool ois_leq(const OrdIntSeq& u, const OrdIntSeq& v) {
    std::size_t n = u.length();
    if (v.length() < n) return false;
    for (std::size_t k = 0; k < n; ++k)
        if (u.ords[k] != v.ords[k] || u.ptr[k] != v.ptr[k]) return false;
    return v.ords[n] <= u.ords[n];
}

bool ois_less(const OrdIntSeq& u, const OrdIntSeq& v) { return ois_leq(u, v) && !(u == v); }

OrdIntSeq ois_remove(const OrdIntSeq& u, const IndexSet& I) {
    OrdIntSeq out;
    out.ptr = remove_indices(u.ptr, I);
    for (std::size_t n = 0; n < u.length(); ++n)
        if (!I.count(n)) out.ords.push_back(u.ords[n]);
    out.ords.push_back(u.last());
    return out;
}

OrdIntSeq reduce_depth(const OrdIntSeq& u, std::size_t nu) {
    IndexSet I;
    for (std::size_t m = 0; m < u.length(); ++m) {
        if (index_depth(u.ptr, m) == nu + 1) {
            IndexSet iv = interval(u.ptr, m);
            I.insert(iv.begin(), iv.end());
        }
    }
    if (I.empty()) return u;
    return ois_remove(u, I);
}

namespace {

class HeightEval {
public:
    explicit HeightEval(const Ordinal& alpha) : alpha_(alpha) {}

    Ordinal root(unsigned nu) {
        if (nu == 0) return mul(alpha_, Ordinal(2));
        return base_pow(3, root(nu - 1));
    }

    Ordinal at(unsigned nu, const OrdIntSeq& u) {
        auto key = std::make_tuple(nu, u.ptr, u.ords);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        Ordinal v = compute(nu, u);
        memo_.emplace(std::move(key), v);
        return v;
    }

private:
    Ordinal compute(unsigned nu, const OrdIntSeq& u) {
        if (nu == 0) {
            if (u.length() == 0) return add(alpha_, u.ords[0]);
            if (u.length() == 1) return u.ords[1];
            throw std::invalid_argument("c_height: sequence deeper than 0: " + render(u));
        }
        OrdIntSeq w = reduce_depth(u, nu - 1);
        Ordinal total;
        for (std::size_t m = 0; m < w.length(); ++m) total = add(total, base_pow(3, at(nu - 1, ois_prefix(w, m))));
        Ordinal last = base_pow(3, at(nu - 1, w));
        return add(total, mul(last, Ordinal(2)));
    }

    Ordinal alpha_;
    std::map<std::tuple<unsigned, PointerSeq, std::vector<Ordinal>>, Ordinal> memo_;
};

}  // namespace

Ordinal c_height(unsigned nu, const Ordinal& alpha, const OisNode& u) {
    HeightEval h(alpha);
    if (!u) return h.root(nu);
    if (!ois_valid(*u)) throw std::invalid_argument("c_height: not an ordinal interaction sequence: " + render(*u));
    if (seq_depth(u->ptr) > nu) throw std::invalid_argument("c_height: sequence deeper than " + std::to_string(nu));
    for (const auto& a : u->ords)
        if (!(a < alpha)) throw std::invalid_argument("c_height: entry " + render(a) + " not below " + render(alpha));
    return h.at(nu, *u);
}

std::string render(const OrdIntSeq& u) {
    std::string out;
    for (std::size_t n = 0; n < u.length(); ++n) out += "(" + render(u.ords[n]) + "," + std::to_string(u.ptr[n]) + ")";
    return out + render(u.last());
}

OrdIntSeq parse_ois(std::string_view text) {
    OrdIntSeq u;
    std::size_t pos = 0;
    while (pos < text.size() && text[pos] == '(') {
        // Ordinal notations may contain parentheses, so split at the last comma of the group.
        int depth = 0;
        std::size_t end = pos;
        for (; end < text.size(); ++end) {
            if (text[end] == '(') ++depth;
            else if (text[end] == ')' && --depth == 0) break;
        }
        if (end >= text.size()) throw ParseError("unclosed pair in ordinal interaction sequence");
        std::string_view group = text.substr(pos + 1, end - pos - 1);
        auto comma = group.rfind(',');
        if (comma == std::string_view::npos) throw ParseError("pair without pointer in ordinal interaction sequence");
        u.ords.push_back(parse_ordinal(group.substr(0, comma)));
        std::string p(group.substr(comma + 1));
        try {
            u.ptr.push_back(static_cast<std::size_t>(std::stoul(p)));
        } catch (const std::exception&) {
            throw ParseError("bad pointer in ordinal interaction sequence: " + p);
        }
        pos = end + 1;
    }
    u.ords.push_back(parse_ordinal(text.substr(pos)));
    return u;
}

}  // namespace pagame

#pragma once

#include "pagame/ordinal.hpp"

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace pagame {

// i_0 i_1 ... with i_n < n for n > 0 and i_0 = 0.
using PointerSeq = std::vector<std::size_t>;
using IndexSet = std::set<std::size_t>;

bool is_pointer(const PointerSeq& i);
// V(0) = {}, V(n+1) = {n} u V(i_n). Defined for n <= i.size().
IndexSet view_V(const PointerSeq& i, std::size_t n);
// W(0) = {}, W(n+1) = {n, i_n} u W(i_n).
IndexSet view_W(const PointerSeq& i, std::size_t n);
// i_{n+1} in V(n+1) for every n.
bool is_interaction(const PointerSeq& i);

// Length of the chain m, i_m, i_{i_m}, ..., 0 minus one.
std::size_t index_depth(const PointerSeq& i, std::size_t m);
std::size_t seq_depth(const PointerSeq& i);

// i_n in I implies n in I.
bool is_isolated(const PointerSeq& i, const IndexSet& I);
// Re-index the complement of an isolated I. Precondition: is_isolated(i, I).
PointerSeq remove_indices(const PointerSeq& i, const IndexSet& I);
// [i_m, m] as a set of indices.
IndexSet interval(const PointerSeq& i, std::size_t m);
// No later index points at m.
bool is_unreferenced(const PointerSeq& i, std::size_t m);

// Every interaction sequence of exactly the given length.
std::vector<PointerSeq> enumerate_interaction(std::size_t length);
// 0 0 1 2 3 2 5 2 7 ...
PointerSeq zigzag_sequence(std::size_t length);

// Exhaustive checks of the structural facts about views and removal; each
// returns an empty string on success and a description of a failure otherwise.
std::string check_views(const PointerSeq& i);
std::string check_intervals(const PointerSeq& i);
std::string check_removal_closure(const PointerSeq& i);

std::string render(const PointerSeq& i);

// ---------------------------------------------------------------------------
// Ordinal-labelled interaction sequences (a0,i0)(a1,i1)...(a_{n-1},i_{n-1})a_n.

struct OrdIntSeq {
    std::vector<Ordinal> ords;  // n + 1 entries
    PointerSeq ptr;             // n entries

    std::size_t length() const { return ptr.size(); }
    const Ordinal& last() const { return ords.back(); }
    friend bool operator==(const OrdIntSeq&, const OrdIntSeq&) = default;
};

// The root of the tree is represented by nullopt.
using OisNode = std::optional<OrdIntSeq>;

// Pointer part is an interaction sequence and a_{m+1} < a_{i_m} for 0 < m < n.
bool ois_valid(const OrdIntSeq& u);
// The prefix ending at a_m.
OrdIntSeq ois_prefix(const OrdIntSeq& u, std::size_t m);
// Pairs of u are a prefix of the pairs of v and v's ordinal at position n is <= a_n.
bool ois_leq(const OrdIntSeq& u, const OrdIntSeq& v);
bool ois_less(const OrdIntSeq& u, const OrdIntSeq& v);
OrdIntSeq ois_remove(const OrdIntSeq& u, const IndexSet& I);
// Removes the intervals [i_m, m] whose right end has depth nu + 1.
OrdIntSeq reduce_depth(const OrdIntSeq& u, std::size_t nu);

// The height function h_nu on the tree of sequences of depth <= nu below alpha.
Ordinal c_height(unsigned nu, const Ordinal& alpha, const OisNode& u);

std::string render(const OrdIntSeq& u);
OrdIntSeq parse_ois(std::string_view text);

}  // namespace pagame

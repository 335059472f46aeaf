#pragma once

#include "pagame/descent.hpp"
#include "pagame/formula.hpp"

#include <functional>
#include <string>
#include <vector>

namespace pagame {

// forall x exists y phi0(x, y), with phi0 a literal or exists z of a literal.
void check_pi2_shape(const Formula& goal);
// exists x1 forall y1 ... exists xk forall yk theta, theta a literal. Returns k.
std::size_t check_nci_shape(const Formula& goal);

struct ExtractOptions {
    std::size_t watchdog = 1'000'000;
};

struct ExtractStage {
    std::string value;  // the play's last move
    Ordinal ordinal;
};

struct Extraction {
    std::vector<Nat> inputs;
    std::vector<Nat> outputs;  // y for pi2 goals; x1..xk for nci goals
    Play play;
    std::vector<ExtractStage> stages;
    Ordinal bound;  // gamma*(alpha+2)

    const Ordinal& max_ordinal() const { return stages.front().ordinal; }
};

// The witness y for input n, read off Eloisa's winning play against the
// Abelard who answers every query of the goal with n. The computation is a
// descent recursion below gamma*(alpha+2).
Extraction extract_pi2(const Signature& sig, const DRStrategy& g, const Nat& n, const ExtractOptions& opt = {});

using CounterFn = std::function<Nat(const std::vector<Nat>&)>;

// Values x1..xk such that theta(x1, f1(x1), ..., xk, fk(x1..xk)) holds.
Extraction extract_nci(const Signature& sig, const DRStrategy& g, const std::vector<CounterFn>& f,
                       const ExtractOptions& opt = {});

// theta at the given x values with y_j = f_j(x1..xj).
bool nci_holds(const Signature& sig, const Formula& goal, const std::vector<CounterFn>& f, const std::vector<Nat>& xs);
// phi0(n, y) holds, checked on the play's winning literal when phi0 has an inner existential.
bool pi2_holds(const Signature& sig, const Formula& goal, const Nat& n, const Nat& y, const Play& play);

}  // namespace pagame

// Trace fixtures shared between the unit and acceptance suites.
#pragma once

#include "eqc/proofs.hpp"

namespace eqc::testing {

// The identity subproof extended with the detachments that assemble
// E(Epp, m)-shaped theorems and their converses:
//   32 = D1.31   EEEEppqErqr-shape
//   33 = D32.1   EEEEppqrEqr-shape
//   34 = D33.28  EpEEqqp      (adjoins Epp on the left of any theorem)
//   35 = D34.31  E(Epp, Eqq)
//   36 = D34.1   E(Epp, XCB')
//   37 = D26.36  E(XCB', Epp)
//   38 = D34.26  E(Epp, EEpqEqp')
//   39 = D26.38  E(EEpqEqp', Epp)
inline ProofTrace extended_fixture() {
    std::string text = format_trace(epp_fixture());
    text +=
        "32 = D1.31\n"
        "33 = D32.1\n"
        "34 = D33.28\n"
        "35 = D34.31\n"
        "36 = D34.1\n"
        "37 = D26.36\n"
        "38 = D34.26\n"
        "39 = D26.38\n";
    return parse_trace(text);
}

// Truncate a trace after the step with the given id; ancestors all have
// smaller ids, so the prefix is self-contained and ends at that step.
inline ProofTrace prefix_until(const ProofTrace& trace, int last_id) {
    ProofTrace out;
    for (const auto& step : trace.steps)
        if (step.id <= last_id) out.steps.push_back(step);
    return out;
}

}  // namespace eqc::testing

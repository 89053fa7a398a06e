#pragma once

#include <cstdlib>
#include <string>

namespace diolab {

// Shared resource limits. Operations that would exceed a cap throw
// budget_error instead of degrading silently.
struct Config {
    long max_depth = 500;          // convergent table depth; DIOLAB_MAX_DEPTH overrides
    int escalation_rounds = 8;     // certified-comparison retries, depth doubles per round
    long materialize_cap = 200000; // widest partition level realized interval by interval
    long cover_cap = 1000000;      // realized cover intervals per generation
    long bitset_cap = 10000000;    // survivor survivors tracked positionally per generation
    long sample_cap = 20000;       // deterministic sample size where exhaustion is infeasible
    int threads = 1;
    unsigned long seed = 20260822;
    long superexp_cap = 4096;           // exponent clamp for the doubly exponential rule

    static Config from_env() {
        Config c;
        if (const char* s = std::getenv("DIOLAB_MAX_DEPTH")) {
            char* end = nullptr;
            long v = std::strtol(s, &end, 10);
            if (end && *end == '\0' && v > 0) c.max_depth = v;
        }
        return c;
    }
};

} // namespace diolab

// Acceptance suite driver: one pass/fail line per criterion; exit 1 when any
// criterion fails.
#include <cstdio>
#include <thread>

#include "uniadd/acceptance.hpp"
#include "uniadd/report_io.hpp"

int main() {
    unsigned hw = std::thread::hardware_concurrency();
    uniadd::AcceptanceOptions opts;
    opts.threads = hw == 0 ? 1 : static_cast<int>(hw);
    auto results = uniadd::run_acceptance(opts);
    bool all_pass = true;
    for (const auto& r : results) {
        all_pass = all_pass && r.pass;
        std::printf("%s criterion %d: %s [%ss] %s\n", r.pass ? "PASS" : "FAIL", r.id,
                    r.name.c_str(), uniadd::io::fmt_double(r.seconds).c_str(),
                    r.detail.c_str());
        std::fflush(stdout);
    }
    if (!all_pass)
        std::printf("note: red criteria are asserted at their stated thresholds; see the "
                    "per-criterion detail for the measured values\n");
    return all_pass ? 0 : 1;
}

// Runs the ten acceptance checks and prints one PASS/FAIL line per check.
// Usage: acceptance [--long] [check-id ...]

#include "ctaut/checks.hpp"

#include <chrono>
#include <cstdio>
#include <cstring>
#include <iostream>
#include <set>

using namespace ctaut;

int main(int argc, char** argv) {
    Selection sel;
    std::set<std::string> only;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--long") == 0)
            sel.long_mode = true;
        else
            only.insert(argv[i]);
    }

    int failures = 0, index = 0;
    for (const auto& info : check_catalog()) {
        ++index;
        if (!only.empty() && !only.count(info.id))
            continue;
        const auto t0 = std::chrono::steady_clock::now();
        std::size_t items = 0, passed = 0;
        Verdict worst = Verdict::Certified;
        std::string first_failure;
        try {
            for (const auto& task : check_tasks(info.id, sel)) {
                const CheckItem it = task.run();
                ++items;
                if (item_passes(info, it))
                    ++passed;
                else if (first_failure.empty())
                    first_failure = it.label + " " + verdict_name(it.verdict) + (it.note.empty() ? "" : ": " + it.note);
                if (it.verdict == Verdict::Nonzero || (it.verdict == Verdict::Consistent && worst == Verdict::Certified))
                    worst = it.verdict;
            }
        } catch (const std::exception& e) {
            first_failure = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool ok = first_failure.empty() && items > 0 && passed == items;
        failures += !ok;
        std::printf("[%2d] %s %-22s %-10s %zu/%zu items  %.1f s  %s\n", index, ok ? "PASS" : "FAIL",
                    info.id.c_str(), verdict_name(worst), passed, items, secs, info.title.c_str());
        if (!ok)
            std::printf("     first failure: %s\n", first_failure.c_str());
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}

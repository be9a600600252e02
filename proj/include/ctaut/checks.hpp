#pragma once

#include "ctaut/integrate.hpp"
#include "ctaut/strata.hpp"
#include "ctaut/treecomb.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ctaut {

struct DegreeSummary {
    std::size_t pairings = 0;
    std::size_t nonzero = 0;
};

// Outcome of one parameter point of a check.
struct CheckItem {
    std::string label;
    std::vector<std::pair<std::string, std::string>> params;
    Verdict verdict = Verdict::Certified;
    bool canonical = false;                // identical canonical expansions
    std::map<int, DegreeSummary> degrees;  // filled by pairing-polynomial checks
    std::vector<std::string> hashes;       // class_hash of the computed classes
    std::string note;
};

struct CheckTask {
    std::string label;
    std::function<CheckItem()> run;
};

struct CheckInfo {
    std::string id;
    std::string title;
    bool needs_certified = false;  // Consistent is not enough
};

// The ten acceptance checks, in order.
const std::vector<CheckInfo>& check_catalog();
const CheckInfo& check_info(const std::string& id);  // throws std::invalid_argument

// Restricts a check to the items whose parameters match; unset fields match anything.
struct Selection {
    std::optional<int> g, n, m, r;
    bool long_mode = false;
};
std::vector<CheckTask> check_tasks(const std::string& id, const Selection& sel);

bool item_passes(const CheckInfo& info, const CheckItem& item);

// FNV-1a of the canonical printout; stable across runs of the same build.
std::string class_hash(const StrataClass& x);

// Signed count of admissible level functions by enumerating all maps V -> {0..|V|-1}.
long brute_force_c_lvl(const StableRootedTree& t, const std::vector<int>& p);

// Psi intersection numbers from the DVV recursion alone.
Rational dvv_integral(int g, const std::vector<int>& k);

}  // namespace ctaut

#include "ctaut/assemble.hpp"
#include "ctaut/checks.hpp"
#include "ctaut/treecomb.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <thread>

using namespace ctaut;
using nlohmann::ordered_json;

namespace {

constexpr const char* kSchema = "ctaut-report/1";

enum Exit { Ok = 0, Failed = 1, Error = 2, OnlyConsistent = 3 };

struct RunConfig {
    int jobs = 1;
    bool strict = false;
    bool timing = false;
};

int rank(Verdict v) { return v == Verdict::Certified ? 0 : v == Verdict::Consistent ? 1 : 2; }

std::string exponent_string(const Exponent& e) {
    std::string s;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0)
            continue;
        if (!s.empty())
            s += "*";
        s += "a" + std::to_string(i + 1);
        if (e[i] > 1)
            s += "^" + std::to_string(e[i]);
    }
    return s.empty() ? "1" : s;
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(path);
    if (!f)
        throw std::runtime_error("cannot write " + path);
    f << text;
}

// Runs the tasks on `jobs` threads; results keep the task order.
std::vector<CheckItem> run_tasks(const std::vector<CheckTask>& tasks, const RunConfig& cfg,
                                 std::vector<double>& seconds) {
    std::vector<CheckItem> items(tasks.size());
    seconds.assign(tasks.size(), 0.0);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < tasks.size(); i = next++) {
            const auto t0 = std::chrono::steady_clock::now();
            items[i] = tasks[i].run();
            seconds[i] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            if (cfg.timing)
                std::cerr << tasks[i].label << ": " << verdict_name(items[i].verdict) << " ("
                          << seconds[i] << " s)\n";
        }
    };
    const int n = std::max(1, std::min<int>(cfg.jobs, static_cast<int>(tasks.size())));
    std::vector<std::thread> pool;
    for (int i = 1; i < n; ++i)
        pool.emplace_back(worker);
    worker();
    for (auto& t : pool)
        t.join();
    return items;
}

struct CheckOutcome {
    ordered_json report;
    bool pass = true;
    Verdict worst = Verdict::Certified;
};

CheckOutcome run_check(const std::string& id, const Selection& sel, const RunConfig& cfg) {
    const CheckInfo& info = check_info(id);
    const auto tasks = check_tasks(id, sel);
    std::vector<double> seconds;
    const auto items = run_tasks(tasks, cfg, seconds);

    CheckOutcome out;
    ordered_json& r = out.report;
    r["schema"] = kSchema;
    r["version"] = CTAUT_VERSION;
    r["check"] = info.id;
    r["title"] = info.title;
    r["long"] = sel.long_mode;
    ordered_json selection = ordered_json::object();
    if (sel.g)
        selection["g"] = *sel.g;
    if (sel.n)
        selection["n"] = *sel.n;
    if (sel.m)
        selection["m"] = *sel.m;
    if (sel.r)
        selection["r"] = *sel.r;
    r["selection"] = selection;
    r["items"] = ordered_json::array();
    for (std::size_t i = 0; i < items.size(); ++i) {
        const CheckItem& it = items[i];
        ordered_json j;
        j["label"] = it.label;
        ordered_json params = ordered_json::object();
        for (const auto& [k, v] : it.params)
            params[k] = v;
        j["params"] = params;
        j["verdict"] = verdict_name(it.verdict);
        j["canonical"] = it.canonical;
        if (!it.degrees.empty()) {
            ordered_json d = ordered_json::object();
            for (const auto& [deg, s] : it.degrees)
                d[std::to_string(deg)] = {{"pairings", s.pairings}, {"nonzero", s.nonzero}};
            j["degrees"] = d;
        }
        j["hashes"] = it.hashes;
        if (!it.note.empty())
            j["note"] = it.note;
        if (cfg.timing)
            j["seconds"] = seconds[i];
        r["items"].push_back(j);
        out.pass = out.pass && item_passes(info, it);
        if (rank(it.verdict) > rank(out.worst))
            out.worst = it.verdict;
    }
    out.pass = out.pass && !items.empty();
    r["verdict"] = verdict_name(out.worst);
    r["pass"] = out.pass;
    return out;
}

int exit_code(bool pass, Verdict worst, const RunConfig& cfg) {
    if (!pass)
        return Failed;
    if (cfg.strict && worst == Verdict::Consistent)
        return OnlyConsistent;
    return Ok;
}

// ---------------------------------------------------------------------------

ordered_json class_json(const StrataClass& x) {
    ordered_json terms = ordered_json::array();
    for (const auto& [key, t] : x.terms())
        terms.push_back({{"stratum", key}, {"degree", t.stratum.degree()}, {"coef", t.coef.str()}});
    return {{"g", x.genus()}, {"points", x.num_points()}, {"hash", class_hash(x)}, {"terms", terms}};
}

int cmd_trees(int g, int n, int m, bool json) {
    const auto trees = enumerate_srt(g, n, m);
    if (json) {
        ordered_json j{{"g", g}, {"n", n}, {"m", m}, {"count", trees.size()}};
        j["trees"] = ordered_json::array();
        for (const auto& t : trees)
            j["trees"].push_back(t.canonical());
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << trees.size() << "\n";
        for (const auto& t : trees)
            std::cout << t.canonical() << "\n";
    }
    return Ok;
}

int cmd_class(const ClassRequest& r, bool push, bool json) {
    const StrataClass x = push ? pushforward_class(r) : assemble(r);
    if (json) {
        ordered_json j{{"family", family_name(r.family)}, {"g", r.g}, {"n", r.n}, {"m", r.m},
                       {"a", r.a}, {"pushforward", push}};
        j["class"] = class_json(x);
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << x.str() << "\n";
    }
    return Ok;
}

int cmd_interp(const ClassRequest& r, bool pairings, bool json) {
    ordered_json j{{"family", family_name(r.family)}, {"g", r.g}, {"n", r.n}, {"m", r.m}};
    std::vector<std::array<std::string, 4>> rows;  // key, degree, monomial, coefficient
    const bool omega = r.family == Family::Omega || r.family == Family::LvlOmega;
    if (pairings || omega) {
        j["kind"] = "pairings";
        const PairingPoly p = interpolate_request_pairings(r);
        for (const auto& [d, polys] : p.by_degree)
            for (const auto& [key, poly] : polys)
                for (const auto& [e, c] : poly.terms())
                    rows.push_back({key, std::to_string(d), exponent_string(e), c.str()});
    } else {
        j["kind"] = "coefficients";
        const PolyClass p = r.family == Family::A0 ? a0_polynomial(r.g, r.n, r.max_degree)
                                                   : interpolate_request(r);
        for (const auto& [key, t] : p.terms)
            for (const auto& [e, c] : t.coef.terms())
                rows.push_back({key, std::to_string(t.stratum.degree()), exponent_string(e), c.str()});
    }
    if (json) {
        j["rows"] = ordered_json::array();
        for (const auto& row : rows)
            j["rows"].push_back(
                {{"stratum", row[0]}, {"degree", std::stoi(row[1])}, {"monomial", row[2]}, {"coef", row[3]}});
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << (j["kind"] == "pairings" ? "pairing_stratum" : "stratum")
                  << ",degree,monomial,coefficient\n";
        for (const auto& row : rows)
            std::cout << '"' << row[0] << "\"," << row[1] << "," << row[2] << "," << row[3] << "\n";
    }
    return Ok;
}

int cmd_verify(const std::string& id, const Selection& sel, const RunConfig& cfg, const std::string& out) {
    const CheckOutcome o = run_check(id, sel, cfg);
    write_output(out, o.report.dump(2) + "\n");
    std::cerr << id << ": " << (o.pass ? "PASS" : "FAIL") << " (" << verdict_name(o.worst) << ")\n";
    return exit_code(o.pass, o.worst, cfg);
}

int cmd_suite(bool long_mode, const RunConfig& cfg, const std::string& out) {
    ordered_json all{{"schema", kSchema}, {"version", CTAUT_VERSION}, {"long", long_mode}};
    all["checks"] = ordered_json::array();
    bool pass = true;
    Verdict worst = Verdict::Certified;
    Selection sel;
    sel.long_mode = long_mode;
    for (const auto& info : check_catalog()) {
        const CheckOutcome o = run_check(info.id, sel, cfg);
        std::cout << (o.pass ? "PASS " : "FAIL ") << info.id << " (" << verdict_name(o.worst) << ", "
                  << o.report["items"].size() << " items)" << std::endl;
        all["checks"].push_back(o.report);
        pass = pass && o.pass;
        if (rank(o.worst) > rank(worst))
            worst = o.worst;
    }
    all["pass"] = pass;
    all["verdict"] = verdict_name(worst);
    if (!out.empty())
        write_output(out, all.dump(2) + "\n");
    return exit_code(pass, worst, cfg);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Compact-type tautological classes: assembly, interpolation and checks"};
    app.require_subcommand(1);
    app.set_config("--config", "", "TOML or INI file with option defaults");
    RunConfig cfg;
    app.add_option("-j,--jobs", cfg.jobs, "worker threads")->check(CLI::PositiveNumber);
    app.add_flag("--strict", cfg.strict, "exit with 3 when the worst verdict is Consistent");
    app.add_flag("--timing", cfg.timing, "per-item wall time on stderr and in reports");

    int g = 0, n = 0, m = 0;
    auto add_gnm = [&](CLI::App* sub) {
        sub->add_option("g", g, "genus")->required()->check(CLI::NonNegativeNumber);
        sub->add_option("n", n, "regular legs")->required()->check(CLI::NonNegativeNumber);
        sub->add_option("m", m, "frozen legs")->required()->check(CLI::NonNegativeNumber);
    };

    bool json = false;
    auto* trees = app.add_subcommand("trees", "enumerate stable rooted trees");
    add_gnm(trees);
    trees->add_flag("--json", json, "JSON output");

    std::string family;
    std::vector<long> a;
    int degree = -1;
    bool push = false;
    auto* cls = app.add_subcommand("class", "assemble a class at integer flows");
    cls->add_option("family", family, "Omega, lvlOmega, Psi, lvlPsi, A1, A0")->required();
    add_gnm(cls);
    cls->add_option("--a", a, "flows a_1 .. a_n")->expected(0, -1);
    cls->add_option("--degree", degree, "maximal degree");
    cls->add_flag("--push", push, "push forward along the last frozen leg");
    cls->add_flag("--json", json, "JSON output");

    bool pairings = false;
    auto* interp = app.add_subcommand("interp", "coefficients as polynomials in the flows (CSV)");
    interp->add_option("family", family, "class family")->required();
    add_gnm(interp);
    interp->add_option("--degree", degree, "maximal degree");
    interp->add_flag("--pairings", pairings, "interpolate pairings instead of coefficients");
    interp->add_flag("--json", json, "JSON output");

    std::string check, out;
    std::optional<int> sg, sn, sm, sr;
    bool long_mode = false;
    auto* verify = app.add_subcommand("verify", "run one check and write its report");
    verify->add_option("check", check, "check id")->required();
    verify->add_option("--g", sg, "only this genus");
    verify->add_option("--n", sn, "only this number of regular legs");
    verify->add_option("--m", sm, "only this number of frozen legs");
    verify->add_option("--r", sr, "only this psi power (relations)");
    verify->add_flag("--long", long_mode, "include the long cases");
    verify->add_option("-o,--out", out, "report file (default stdout)");

    auto* suite = app.add_subcommand("suite", "run every check");
    suite->add_flag("--long", long_mode, "include the long cases");
    suite->add_option("-o,--out", out, "combined report file");

    auto* list = app.add_subcommand("list", "list check ids");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? Ok : Error;
    }

    try {
        if (*trees)
            return cmd_trees(g, n, m, json);
        if (*cls || *interp) {
            ClassRequest r{parse_family(family), g, n, m, a, degree};
            if (*interp)
                return cmd_interp(r, pairings, json);
            if (r.a.size() != static_cast<std::size_t>(n))
                throw std::invalid_argument("expected " + std::to_string(n) + " values after --a");
            return cmd_class(r, push, json);
        }
        if (*verify) {
            Selection sel{sg, sn, sm, sr, long_mode};
            return cmd_verify(check, sel, cfg, out);
        }
        if (*suite)
            return cmd_suite(long_mode, cfg, out);
        if (*list) {
            for (const auto& c : check_catalog())
                std::cout << c.id << "  " << c.title << "\n";
            return Ok;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return Error;
    }
    return Error;
}

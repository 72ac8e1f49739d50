#include "cosco/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "cosco/cc_scgd.hpp"
#include "cosco/diagnostics.hpp"
#include "cosco/ec_scgd.hpp"
#include "cosco/problems.hpp"
#include "cosco/rng.hpp"

namespace cosco {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

[[noreturn]] void bad_key(const std::string& key, const std::string& why) {
    throw std::invalid_argument("config key '" + key + "': " + why);
}

double parse_double(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing");
        return d;
    } catch (const std::exception&) {
        bad_key(key, "expected a number, got '" + v + "'");
    }
}

// Comma-separated values; integer lists also accept "a..b" ranges.
std::vector<std::string> split_list(std::string v) {
    if (v.size() >= 2 && v.front() == '[' && v.back() == ']') v = v.substr(1, v.size() - 2);
    std::vector<std::string> out;
    std::istringstream in(v);
    std::string cell;
    while (std::getline(in, cell, ',')) {
        cell = trim(cell);
        if (!cell.empty()) out.push_back(cell);
    }
    return out;
}

template <typename UInt>
std::vector<UInt> parse_uint_list(const std::string& key, const std::string& v) {
    std::vector<UInt> out;
    for (const auto& cell : split_list(v)) {
        const auto dots = cell.find("..");
        try {
            if (dots != std::string::npos) {
                const auto lo = std::stoull(cell.substr(0, dots));
                const auto hi = std::stoull(cell.substr(dots + 2));
                if (hi < lo) bad_key(key, "descending range '" + cell + "'");
                for (auto i = lo; i <= hi; ++i) out.push_back(static_cast<UInt>(i));
            } else {
                out.push_back(static_cast<UInt>(std::stoull(cell)));
            }
        } catch (const std::invalid_argument&) {
            bad_key(key, "expected integer or range, got '" + cell + "'");
        }
    }
    if (out.empty()) bad_key(key, "empty list");
    return out;
}

Vec parse_double_list(const std::string& key, const std::string& v) {
    Vec out;
    for (const auto& cell : split_list(v)) out.push_back(parse_double(key, cell));
    if (out.empty()) bad_key(key, "empty list");
    return out;
}

// Either EC or CC instantiation of a configured problem.
struct ProblemHandle {
    std::optional<EcProblem> ec;
    std::optional<CcProblem> cc;

    const FeasibleSet& set() const { return ec ? ec->set : cc->set; }
    const std::string& tag() const { return ec ? ec->tag : cc->tag; }
    std::optional<double> f_star() const { return ec ? ec->f_star : cc->f_star; }
};

ProblemHandle build_problem(const RunConfig& cfg, std::uint64_t oracle_seed) {
    ProblemHandle h;
    const auto table = [&] {
        return cfg.scenario_file ? ScenarioTable::load_csv(*cfg.scenario_file)
                                 : default_portfolio_table();
    };
    if (cfg.problem == "kkt-ec") {
        h.ec = make_kkt_problem_ec(oracle_seed);
    } else if (cfg.problem == "kkt-cc") {
        h.cc = make_kkt_problem_cc(oracle_seed);
    } else if (cfg.problem == "cvar") {
        h.ec = make_cvar_problem(table(), cfg.alpha, cfg.gamma, oracle_seed);
    } else if (cfg.problem == "mean-dev") {
        h.cc = make_mean_deviation_problem(table(), cfg.gammas, cfg.mu, oracle_seed);
    } else if (cfg.problem == "moment") {
        h.cc = make_moment_portfolio_problem(table(), cfg.p, cfg.c_p, oracle_seed);
    } else {
        bad_key("problem", "unknown problem tag '" + cfg.problem + "'");
    }
    return h;
}

Vec resolve_x0(const RunConfig& cfg, const FeasibleSet& set) {
    if (cfg.x0_spec == "center") return set.center();
    if (cfg.x0_spec == "zeros") {
        Vec x0(set.dim(), 0.0);
        if (!set.contains(x0, 1e-9))
            bad_key("x0", "'zeros' lies outside the feasible set for this problem");
        return x0;
    }
    Vec x0 = parse_double_list("x0", cfg.x0_spec);
    if (x0.size() != set.dim())
        bad_key("x0", "vector length " + std::to_string(x0.size()) + " != dimension " +
                          std::to_string(set.dim()));
    return x0;
}

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string fmt_opt(const std::optional<double>& v) {
    return v ? fmt_double(*v) : std::string();
}

}  // namespace

RunConfig parse_config(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw std::invalid_argument("config line " + std::to_string(lineno) +
                                                     ": empty key");
        if (kv.count(key)) bad_key(key, "duplicate key");
        kv[key] = value;
    }

    RunConfig cfg;
    auto take = [&](const char* key) -> std::optional<std::string> {
        auto it = kv.find(key);
        if (it == kv.end()) return std::nullopt;
        std::string v = it->second;
        kv.erase(it);
        return v;
    };
    auto require = [&](const char* key) {
        auto v = take(key);
        if (!v) bad_key(key, "missing required key");
        return *v;
    };

    cfg.algorithm = require("algorithm");
    if (cfg.algorithm != "ec" && cfg.algorithm != "cc")
        bad_key("algorithm", "must be 'ec' or 'cc'");
    cfg.problem = require("problem");
    cfg.n_values = parse_uint_list<std::size_t>("N", require("N"));
    for (auto n : cfg.n_values)
        if (n < 1) bad_key("N", "entries must be >= 1");
    cfg.seeds = parse_uint_list<std::uint64_t>("seeds", require("seeds"));
    if (std::set<std::uint64_t>(cfg.seeds.begin(), cfg.seeds.end()).size() != cfg.seeds.size())
        bad_key("seeds", "entries must be distinct");

    if (auto v = take("x0")) cfg.x0_spec = *v;
    if (auto v = take("lambda0")) cfg.lambda0 = parse_double_list("lambda0", *v);
    if (cfg.lambda0)
        for (double l : *cfg.lambda0)
            if (l < 0.0) bad_key("lambda0", "entries must be >= 0");
    if (auto v = take("out")) cfg.out_path = *v;
    if (auto v = take("checkpoints")) {
        if (*v == "true") cfg.checkpoints = true;
        else if (*v == "false") cfg.checkpoints = false;
        else bad_key("checkpoints", "must be true or false");
    }
    if (auto v = take("problem.scenario_file")) cfg.scenario_file = *v;
    if (auto v = take("problem.alpha")) cfg.alpha = parse_double("problem.alpha", *v);
    if (auto v = take("problem.gamma")) cfg.gamma = parse_double("problem.gamma", *v);
    if (auto v = take("problem.gammas")) cfg.gammas = parse_double_list("problem.gammas", *v);
    if (auto v = take("problem.mu")) cfg.mu = parse_double("problem.mu", *v);
    if (auto v = take("problem.p")) {
        const double d = parse_double("problem.p", *v);
        cfg.p = static_cast<int>(d);
        if (d != cfg.p) bad_key("problem.p", "must be an integer");
    }
    if (auto v = take("problem.c_p")) cfg.c_p = parse_double_list("problem.c_p", *v);

    if (!kv.empty()) bad_key(kv.begin()->first, "unknown key");

    static const std::map<std::string, std::string> solver_for = {
        {"kkt-ec", "ec"}, {"cvar", "ec"}, {"kkt-cc", "cc"}, {"mean-dev", "cc"}, {"moment", "cc"}};
    auto it = solver_for.find(cfg.problem);
    if (it == solver_for.end()) bad_key("problem", "unknown problem tag '" + cfg.problem + "'");
    if (it->second != cfg.algorithm)
        bad_key("algorithm", "problem '" + cfg.problem + "' requires algorithm '" + it->second +
                                 "'");

    if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) bad_key("problem.alpha", "must be in (0,1)");
    if (!(cfg.mu > 0.0)) bad_key("problem.mu", "must be > 0");
    if (cfg.p < 2 || cfg.p % 2 != 0) bad_key("problem.p", "must be even and >= 2");
    for (double c : cfg.c_p)
        if (!(c > 0.0)) bad_key("problem.c_p", "entries must be > 0");
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::vector<RunRecord> run_sweep(const RunConfig& cfg, std::uint64_t master_seed,
                                 std::size_t workers) {
    struct Job {
        std::size_t n;
        std::uint64_t seed;
    };
    std::vector<Job> jobs;
    for (auto n : cfg.n_values)
        for (auto s : cfg.seeds) jobs.push_back({n, s});

    std::vector<RunRecord> records(jobs.size());
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::string first_error;
    std::mutex err_mutex;

    auto work = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= jobs.size() || failed.load()) break;
            const Job& job = jobs[i];
            try {
                const std::uint64_t run_seed =
                    hash_combine(hash_combine(master_seed, job.n), job.seed);
                ProblemHandle prob = build_problem(cfg, run_seed);
                const Vec x0 = resolve_x0(cfg, prob.set());
                const std::size_t m =
                    prob.ec ? prob.ec->oracle->dims().m : prob.cc->oracle->dims().m;
                Vec lambda0 = cfg.lambda0.value_or(Vec(m, 0.0));
                if (lambda0.size() != m)
                    bad_key("lambda0", "length " + std::to_string(lambda0.size()) +
                                           " != constraint count " + std::to_string(m));
                RunOptions opts;
                opts.f_star = prob.f_star();
                opts.record_metric_trace = cfg.checkpoints;
                StepSchedule sched = prob.ec ? default_schedule_ec(job.n)
                                             : default_schedule_cc(job.n);
                RunRecord rec = prob.ec
                                    ? run_ec_scgd(*prob.ec->oracle, prob.ec->set, sched, x0,
                                                  lambda0, run_seed, opts)
                                    : run_cc_scgd(*prob.cc->oracle, prob.cc->set, sched, x0,
                                                  lambda0, run_seed, opts);
                rec.problem = prob.tag();
                rec.seed = job.seed;  // report the sweep seed, not the derived stream key
                records[i] = std::move(rec);
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lk(err_mutex);
                if (!failed.exchange(true))
                    first_error = "run (N=" + std::to_string(job.n) + ", seed=" +
                                  std::to_string(job.seed) + ") failed: " + e.what();
            }
        }
    };

    workers = std::max<std::size_t>(1, workers);
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t i = 0; i < workers; ++i) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }
    if (failed.load()) throw std::runtime_error(first_error);
    return records;
}

std::string records_to_csv(const std::vector<RunRecord>& records) {
    std::ostringstream out;
    out << "algo,problem,N,seed,obj_gap,feas_resid,dual_norm_max,dual_norm_final,wall_ms\n";
    for (const auto& r : records) {
        out << r.algorithm << ',' << r.problem << ',' << r.n << ',' << r.seed << ','
            << fmt_opt(r.obj_gap) << ',' << fmt_opt(r.feas_resid) << ','
            << fmt_double(r.dual_norm_max) << ',' << fmt_double(r.dual_norm_final) << ','
            << fmt_double(r.wall_ms) << '\n';
    }
    return out.str();
}

std::vector<RunRecord> parse_records_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("records CSV: missing header");
    std::vector<RunRecord> out;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        std::vector<std::string> cells;
        std::istringstream row(line);
        std::string cell;
        while (std::getline(row, cell, ',')) cells.push_back(cell);
        while (cells.size() < 9) cells.emplace_back();  // trailing empty fields
        if (cells.size() != 9)
            throw std::invalid_argument("records CSV: expected 9 columns, got " +
                                        std::to_string(cells.size()));
        RunRecord r;
        r.algorithm = cells[0];
        r.problem = cells[1];
        r.n = std::stoull(cells[2]);
        r.seed = std::stoull(cells[3]);
        if (!cells[4].empty()) r.obj_gap = std::stod(cells[4]);
        if (!cells[5].empty()) r.feas_resid = std::stod(cells[5]);
        r.dual_norm_max = std::stod(cells[6]);
        r.dual_norm_final = std::stod(cells[7]);
        r.wall_ms = std::stod(cells[8]);
        out.push_back(std::move(r));
    }
    return out;
}

std::string emit_report(const std::vector<RunRecord>& records, const std::string& path) {
    if (records.empty()) throw std::invalid_argument("emit_report: no records");

    {
        std::ofstream out(path);
        if (!out) throw std::runtime_error("emit_report: cannot write " + path);
        out << records_to_csv(records);
    }

    struct Agg {
        std::vector<double> gaps, resids;
    };
    std::map<std::size_t, Agg> by_n;
    for (const auto& r : records) {
        auto& a = by_n[r.n];
        if (r.obj_gap) a.gaps.push_back(*r.obj_gap);
        if (r.feas_resid) a.resids.push_back(*r.feas_resid);
    }
    auto mean_se = [](const std::vector<double>& v) -> std::pair<std::optional<double>,
                                                                 std::optional<double>> {
        if (v.empty()) return {std::nullopt, std::nullopt};
        double s = 0.0;
        for (double x : v) s += x;
        const double mean = s / static_cast<double>(v.size());
        if (v.size() < 2) return {mean, 0.0};
        double ss = 0.0;
        for (double x : v) ss += (x - mean) * (x - mean);
        return {mean, std::sqrt(ss / static_cast<double>(v.size() - 1) /
                                static_cast<double>(v.size()))};
    };

    std::string agg_path = path;
    if (auto pos = agg_path.rfind(".csv"); pos != std::string::npos && pos == agg_path.size() - 4)
        agg_path = agg_path.substr(0, pos);
    agg_path += "_agg.csv";

    std::vector<std::pair<std::size_t, double>> gap_points, resid_points;
    {
        std::ofstream out(agg_path);
        if (!out) throw std::runtime_error("emit_report: cannot write " + agg_path);
        out << "N,runs,obj_gap_mean,obj_gap_se,feas_resid_mean,feas_resid_se\n";
        for (const auto& [n, a] : by_n) {
            const auto [gm, gs] = mean_se(a.gaps);
            const auto [rm, rs] = mean_se(a.resids);
            std::size_t runs = 0;
            for (const auto& r : records)
                if (r.n == n) ++runs;
            out << n << ',' << runs << ',' << fmt_opt(gm) << ',' << fmt_opt(gs) << ','
                << fmt_opt(rm) << ',' << fmt_opt(rs) << '\n';
            // Rate fits skip transient-dominated horizons.
            if (n >= 100 && gm && *gm > 0.0) gap_points.emplace_back(n, *gm);
            if (n >= 100 && rm && *rm > 0.0) resid_points.emplace_back(n, *rm);
        }
    }

    std::ostringstream summary;
    summary << records.size() << " runs written to " << path << "\naggregates written to "
            << agg_path << "\n";
    auto report_slope = [&](const char* name,
                            const std::vector<std::pair<std::size_t, double>>& pts) {
        if (pts.size() >= 3) {
            summary << name << " log-log slope: " << fit_loglog_slope(pts) << "\n";
        } else {
            summary << name << " log-log slope: n/a (" << pts.size()
                    << " positive mean points)\n";
        }
    };
    report_slope("obj_gap", gap_points);
    report_slope("feas_resid", resid_points);
    return summary.str();
}

}  // namespace cosco

// Command-line front end: parses number and matrix specs, runs one module
// pipeline per invocation, and emits byte-stable CSV or JSON reports.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include <nlohmann/json.hpp>

#include "diolab/cf.hpp"
#include "diolab/errors.hpp"
#include "diolab/fractal.hpp"
#include "diolab/inhomog.hpp"
#include "diolab/matrix.hpp"
#include "diolab/onesided.hpp"
#include "diolab/partition.hpp"
#include "diolab/singular.hpp"

namespace {

using namespace diolab;
using nlohmann::json;

constexpr const char* kVersion = "1.0.0";

Rat parse_rat(const std::string& s) {
    try {
        Rat r(s);
        if (r.get_den() == 0)
            throw precondition_error("zero denominator in rational: " + s);
        r.canonicalize();
        return r;
    } catch (const error&) {
        throw;
    } catch (const std::exception&) {
        throw precondition_error("rational must be written as p or p/q: " + s);
    }
}

Int parse_int(const std::string& s) {
    try {
        return Int(s);
    } catch (const std::exception&) {
        throw precondition_error("not an integer: " + s);
    }
}

std::string rstr(const Rat& r) {
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

std::string d17(double v) {
    char b[40];
    std::snprintf(b, sizeof b, "%.17g", v);
    return b;
}

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

void load_config_file(const std::string& path, Config& cfg) {
    std::ifstream in(path);
    if (!in) throw precondition_error("cannot open config file: " + path);
    std::string line;
    while (std::getline(in, line)) {
        size_t h = line.find('#');
        if (h != std::string::npos) line = line.substr(0, h);
        line = trim(line);
        if (line.empty()) continue;
        size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw precondition_error("config line needs key=value: " + line);
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        long v = 0;
        try {
            v = std::stol(val);
        } catch (const std::exception&) {
            throw precondition_error("config value must be an integer: " + line);
        }
        if (key == "max_depth") cfg.max_depth = v;
        else if (key == "escalation_rounds") cfg.escalation_rounds = (int)v;
        else if (key == "materialize_cap") cfg.materialize_cap = v;
        else if (key == "cover_cap") cfg.cover_cap = v;
        else if (key == "bitset_cap") cfg.bitset_cap = v;
        else if (key == "sample_cap") cfg.sample_cap = v;
        else if (key == "threads") cfg.threads = (int)v;
        else if (key == "seed") cfg.seed = (unsigned long)v;
        else if (key == "superexp_cap") cfg.superexp_cap = v;
        else throw precondition_error("unknown config key: " + key);
    }
}

struct Common {
    std::string output, format, config_file;
    long seed = -1;
    int threads = 0;
    bool no_header = false;
};

void add_common(CLI::App* sub, Common& c, const std::string& default_format) {
    c.format = default_format;
    sub->add_option("--output", c.output, "write the report here (default stdout)");
    sub->add_option("--format", c.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--seed", c.seed, "seed for sampled checks");
    sub->add_option("--threads", c.threads, "worker threads (default all cores)");
    sub->add_option("--config", c.config_file, "key=value resource-limit file");
    sub->add_flag("--no-header", c.no_header, "omit the version header line");
}

Config make_cfg(const Common& c) {
    Config cfg = Config::from_env();
    int file_threads = 0;
    if (!c.config_file.empty()) {
        Config probe = cfg;
        load_config_file(c.config_file, probe);
        file_threads = probe.threads != cfg.threads ? probe.threads : 0;
        cfg = probe;
    }
    if (c.threads > 0)
        cfg.threads = c.threads;
    else if (file_threads > 0)
        cfg.threads = file_threads;
    else
        cfg.threads = std::max(1u, std::thread::hardware_concurrency());
    if (c.seed >= 0) cfg.seed = (unsigned long)c.seed;
    return cfg;
}

std::ostream& open_out(const std::string& path,
                       std::unique_ptr<std::ofstream>& holder) {
    if (path.empty()) return std::cout;
    holder = std::make_unique<std::ofstream>(path);
    if (!*holder) throw precondition_error("cannot open output file: " + path);
    return *holder;
}

using Params = std::vector<std::pair<std::string, std::string>>;

std::string params_line(const Params& ps) {
    std::ostringstream os;
    for (size_t i = 0; i < ps.size(); ++i)
        os << (i ? " " : "") << ps[i].first << "=" << ps[i].second;
    return os.str();
}

void csv_preamble(std::ostream& os, const Common& c, const Params& ps) {
    if (!c.no_header) os << "# diolab " << kVersion << "\n";
    os << "# " << params_line(ps) << "\n";
}

json params_json(const Common& c, const Params& ps) {
    json j = json::object();
    if (!c.no_header) j["version"] = kVersion;
    json p = json::object();
    for (const auto& kv : ps) p[kv.first] = kv.second;
    j["params"] = p;
    return j;
}

// ---- cf ----------------------------------------------------------------

void run_cf(const std::string& alpha_arg, long K, const std::string& plot,
            const Common& com) {
    if (K < 0) throw precondition_error("K must be >= 0");
    Config cfg = make_cfg(com);
    Alpha al(RealNumberSpec::resolve(alpha_arg, cfg), cfg);
    long last = std::min(K, al.last_level());
    std::unique_ptr<std::ofstream> hold;
    std::ostream& os = open_out(com.output, hold);

    if (plot == "growth") {
        if (last < 1) throw precondition_error("growth series needs K >= 1");
        GrowthStats gs = growth_stats(al, last);
        Params ps = {{"command", "cf"},       {"alpha", alpha_arg},
                     {"K", std::to_string(last)}, {"plot", "growth"},
                     {"construction", "log-denominator-growth"}};
        csv_preamble(os, com, ps);
        os << "k,lo,hi\n";
        for (long k = 1; k <= gs.K; ++k)
            os << k << "," << d17(gs.log_q_over_k[k - 1].lo.get_d()) << ","
               << d17(gs.log_q_over_k[k - 1].hi.get_d()) << "\n";
        return;
    }
    if (!plot.empty())
        throw precondition_error("cf supports only --plot growth");

    Params ps = {{"command", "cf"},
                 {"alpha", alpha_arg},
                 {"K", std::to_string(K)},
                 {"terminated", last < K ? "1" : "0"},
                 {"construction", "convergent-table"}};
    if (com.format == "csv") {
        csv_preamble(os, com, ps);
        os << "k,a,p,q\n";
        for (long k = 0; k <= last; ++k)
            os << k << "," << al.a(k).get_str() << "," << al.p(k).get_str()
               << "," << al.q(k).get_str() << "\n";
    } else {
        json j = params_json(com, ps);
        j["rows"] = json::array();
        for (long k = 0; k <= last; ++k)
            j["rows"].push_back({{"k", k},
                                 {"a", al.a(k).get_str()},
                                 {"p", al.p(k).get_str()},
                                 {"q", al.q(k).get_str()}});
        os << j.dump(2) << "\n";
    }
}

// ---- gaps --------------------------------------------------------------

void run_gaps(const std::string& alpha_arg, long level, const Common& com) {
    Config cfg = make_cfg(com);
    Alpha al(RealNumberSpec::resolve(alpha_arg, cfg), cfg);
    auto rows = partition_level(al, level);
    RatInterval len1 = interval_length(al, level, 1);
    RatInterval len2 = interval_length(al, level, 2);
    auto len = [&](int t) -> const RatInterval& { return t == 1 ? len1 : len2; };
    Params ps = {{"command", "gaps"},
                 {"alpha", alpha_arg},
                 {"level", std::to_string(level)},
                 {"count", std::to_string(rows.size())},
                 {"construction", "three-distance-partition"}};
    std::unique_ptr<std::ofstream> hold;
    std::ostream& os = open_out(com.output, hold);
    if (com.format == "csv") {
        csv_preamble(os, com, ps);
        os << "level,n,partner,type,len_lo,len_hi\n";
        for (const auto& r : rows)
            os << level << "," << r.n.get_str() << "," << r.partner.get_str()
               << "," << r.type << "," << rstr(len(r.type).lo) << ","
               << rstr(len(r.type).hi) << "\n";
    } else {
        os << params_json(com, ps).dump() << "\n";
        for (const auto& r : rows) {
            json j = {{"level", level},
                      {"n", r.n.get_str()},
                      {"partner", r.partner.get_str()},
                      {"type", r.type},
                      {"len_lo", rstr(len(r.type).lo)},
                      {"len_hi", rstr(len(r.type).hi)}};
            os << j.dump() << "\n";
        }
    }
}

// ---- scan --------------------------------------------------------------

void run_scan(const std::string& alpha_arg, const std::string& x_str,
              const std::string& qlo_str, const std::string& qhi_str,
              const std::string& mode_str, const std::string& thr_str,
              const Common& com) {
    if (com.format != "json")
        throw precondition_error("scan reports are json only");
    Config cfg = make_cfg(com);
    Alpha al(RealNumberSpec::resolve(alpha_arg, cfg), cfg);
    Rat x = parse_rat(x_str);
    Int qlo = parse_int(qlo_str), qhi = parse_int(qhi_str);
    ScanMode mode =
        mode_str == "two_sided" ? ScanMode::two_sided : ScanMode::positive;
    std::optional<Rat> thr;
    if (!thr_str.empty()) thr = parse_rat(thr_str);

    ScanReport rep = liminf_scan(al, x, qlo, qhi, mode, thr);

    Params ps = {{"command", "scan"}, {"alpha", alpha_arg},
                 {"x", rstr(x)},      {"q_lo", qlo.get_str()},
                 {"q_hi", qhi.get_str()}, {"mode", mode_str},
                 {"construction", "liminf-scan"}};
    if (thr) ps.push_back({"threshold", rstr(*thr)});
    json j = params_json(com, ps);
    j["mode"] = mode_str;
    j["q_lo"] = qlo.get_str();
    j["q_hi"] = qhi.get_str();
    j["min_lo"] = rstr(rep.min_lo);
    j["min_hi"] = rstr(rep.min_hi);
    j["argmin"] = rep.argmin.get_str();

    json below = json::array();
    if (thr) {
        // every q certified under the threshold, mirrored side as negative q
        struct Hit {
            Int q;
            int side;
        };
        std::vector<Hit> hits;
        bool truncated = false;
        for (int side = 0; side < (mode == ScanMode::two_sided ? 2 : 1);
             ++side) {
            Rat xs = side == 0 ? x : frac_part(Rat(0) - x);
            Int start = qlo;
            while (start <= qhi) {
                if ((long)hits.size() >= cfg.sample_cap) {
                    truncated = true;
                    break;
                }
                auto w = scan_witness(al, xs, start, qhi, ScanMode::positive,
                                      *thr);
                if (!w) break;
                hits.push_back({*w, side});
                start = *w + 1;
            }
        }
        std::sort(hits.begin(), hits.end(), [](const Hit& a, const Hit& b) {
            if (a.q != b.q) return a.q < b.q;
            return a.side < b.side;
        });
        for (const auto& h : hits) {
            Rat xs = h.side == 0 ? x : frac_part(Rat(0) - x);
            long d = std::min(al.depth_for(h.q) + 6, al.max_usable_depth());
            RatInterval v = RatInterval(Rat(h.q)) * al.inhom_dist(h.q, xs, d);
            Int signed_q = h.side == 0 ? h.q : Int(-h.q);
            below.push_back({{"q", signed_q.get_str()},
                             {"value_lo", rstr(v.lo)},
                             {"value_hi", rstr(v.hi)}});
        }
        if (truncated) j["params"]["truncated"] = "1";
    }
    j["below_threshold"] = below;

    std::unique_ptr<std::ofstream> hold;
    std::ostream& os = open_out(com.output, hold);
    os << j.dump(2) << "\n";
}

// ---- onesided ----------------------------------------------------------

void run_onesided(const std::string& alpha_arg, const std::string& eps_str,
                  long K, long depth, const std::string& rule_str,
                  const std::string& gamma_str, const Common& com) {
    Config cfg = make_cfg(com);
    Alpha al(RealNumberSpec::resolve(alpha_arg, cfg), cfg);
    OnesidedParams p;
    p.eps = parse_rat(eps_str);
    p.rule = rule_str == "constant" ? GammaRule::constant : GammaRule::bitlog;
    p.gamma_const = parse_rat(gamma_str);
    ChainReport rep = build_onesided_chain(al, K, depth, p);

    Params ps = {{"command", "onesided"}, {"alpha", alpha_arg},
                 {"eps", rstr(p.eps)},    {"K", std::to_string(K)},
                 {"depth", std::to_string(depth)}, {"gamma_rule", rule_str},
                 {"all_pass", rep.all_pass ? "1" : "0"},
                 {"construction", "one-sided-chain"}};
    if (p.rule == GammaRule::constant)
        ps.push_back({"gamma", rstr(p.gamma_const)});

    std::unique_ptr<std::ofstream> hold;
    std::ostream& os = open_out(com.output, hold);
    if (com.format == "csv") {
        csv_preamble(os, com, ps);
        os << "k,n1,n2,b,far_ok,near_ok,interior_ok,shrink_ok,pass\n";
        for (const auto& s : rep.steps)
            os << s.k << "," << s.n1.get_str() << "," << s.n2.get_str() << ","
               << s.b.get_str() << "," << s.far_ok << "," << s.near_ok << ","
               << s.interior_ok << "," << s.shrink_ok << "," << s.pass << "\n";
    } else {
        json j = params_json(com, ps);
        j["K"] = K;
        j["depth"] = depth;
        j["all_pass"] = rep.all_pass;
        j["hypothesis"] = rep.hypothesis;
        j["steps"] = json::array();
        for (const auto& s : rep.steps)
            j["steps"].push_back({{"k", s.k},
                                  {"n1", s.n1.get_str()},
                                  {"n2", s.n2.get_str()},
                                  {"b", s.b.get_str()},
                                  {"far_gap_lo", rstr(s.far_gap.lo)},
                                  {"far_gap_hi", rstr(s.far_gap.hi)},
                                  {"near_gap_lo", rstr(s.near_gap.lo)},
                                  {"near_gap_hi", rstr(s.near_gap.hi)},
                                  {"far_ok", s.far_ok},
                                  {"near_ok", s.near_ok},
                                  {"interior_ok", s.interior_ok},
                                  {"eps_k", rstr(s.eps_k)},
                                  {"shrink_ok", s.shrink_ok},
                                  {"pass", s.pass}});
        os << j.dump(2) << "\n";
    }
}

// ---- dims --------------------------------------------------------------

std::vector<Int> parse_int_list(const std::string& s) {
    std::vector<Int> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(parse_int(item));
    }
    if (out.empty()) throw precondition_error("empty integer list: " + s);
    return out;
}

void run_dims_cover(const std::string& nseq_str, const std::string& delta_str,
                    long depth, const std::string& plot, const Common& com) {
    Config cfg = make_cfg(com);
    std::vector<Int> nseq = parse_int_list(nseq_str);
    Rat delta = parse_rat(delta_str);
    if (depth <= 0) depth = (long)nseq.size();
    auto covers = erdos_taylor_cover(nseq, delta, depth, cfg);

    Params ps = {{"command", "dims"},
                 {"nseq", nseq_str},
                 {"delta", rstr(delta)},
                 {"depth", std::to_string(depth)},
                 {"construction", "nested-interval-cover"}};
    std::unique_ptr<std::ofstream> hold;
    std::ostream& os = open_out(com.output, hold);

    if (plot == "bound") {
        csv_preamble(os, com, ps);
        os << "gen,lo,hi\n";
        for (long g = 2; g <= (long)covers.size(); ++g) {
            try {
                RatInterval b = mass_dist_lower_bound(covers, g);
                os << covers[g - 1].generation << "," << d17(b.lo.get_d())
                   << "," << d17(b.hi.get_d()) << "\n";
            } catch (const precondition_error&) {
            }
        }
        return;
    }
    if (plot == "counts") {
        csv_preamble(os, com, ps);
        os << "gen,count\n";
        for (const auto& c : covers)
            os << c.generation << "," << c.intervals.size() << "\n";
        return;
    }
    if (!plot.empty())
        throw precondition_error("dims supports --plot bound or counts");

    if (com.format == "csv") {
        csv_preamble(os, com, ps);
        os << "gen,count,m,gap_num,gap_den,lenmax_num,lenmax_den\n";
        for (const auto& c : covers)
            os << c.generation << "," << c.intervals.size() << ","
               << c.m.get_str() << "," << c.gap.get_num().get_str() << ","
               << c.gap.get_den().get_str() << ","
               << c.len_max.get_num().get_str() << ","
               << c.len_max.get_den().get_str() << "\n";
    } else {
        os << params_json(com, ps).dump() << "\n";
        for (const auto& c : covers)
            for (const auto& iv : c.intervals) {
                json j = {{"gen", c.generation},
                          {"lo", rstr(iv.first)},
                          {"hi", rstr(iv.second)}};
                os << j.dump() << "\n";
            }
    }
}

void run_dims_survivor(const std::string& alpha_arg, const std::string& eps_str,
                       long K, long depth, const std::string& M_str,
                       const std::string& plot, const Common& com) {
    Config cfg = make_cfg(com);
    Alpha al(RealNumberSpec::resolve(alpha_arg, cfg), cfg);
    Rat eps = parse_rat(eps_str);
    Int M = M_str.empty() ? Int(0) : parse_int(M_str);
    SurvivorCoverReport rep = survivor_cover(al, eps, K, depth, M);

    Params ps = {{"command", "dims"},
                 {"alpha", alpha_arg},
                 {"eps", rstr(eps)},
                 {"K", std::to_string(K)},
                 {"depth", std::to_string(depth)},
                 {"M", rep.M.get_str()},
                 {"growth_ok", rep.growth_ok ? "1" : "0"},
                 {"counts_ok", rep.counts_ok ? "1" : "0"},
                 {"construction", "survivor-cover"}};
    if (rep.upper) {
        ps.push_back({"upper_lo", d17(rep.upper->lo.get_d())});
        ps.push_back({"upper_hi", d17(rep.upper->hi.get_d())});
    }
    std::unique_ptr<std::ofstream> hold;
    std::ostream& os = open_out(com.output, hold);

    if (plot == "counts") {
        csv_preamble(os, com, ps);
        os << "gen,count\n";
        for (size_t g = 0; g < rep.counts.size(); ++g)
            os << g << "," << rep.counts[g].get_str() << "\n";
        return;
    }
    if (!plot.empty())
        throw precondition_error("survivor reports support only --plot counts");

    if (com.format == "csv") {
        csv_preamble(os, com, ps);
        os << "gen,level,q,count\n";
        for (size_t g = 0; g < rep.counts.size(); ++g)
            os << g << "," << rep.plan.levels[g] << ","
               << rep.plan.q[g].get_str() << "," << rep.counts[g].get_str()
               << "\n";
    } else {
        json j = params_json(com, ps);
        j["M"] = rep.M.get_str();
        j["growth_ok"] = rep.growth_ok;
        j["counts_ok"] = rep.counts_ok;
        if (rep.upper) {
            j["upper_lo"] = rstr(rep.upper->lo);
            j["upper_hi"] = rstr(rep.upper->hi);
        }
        j["generations"] = json::array();
        for (size_t g = 0; g < rep.counts.size(); ++g)
            j["generations"].push_back({{"gen", g},
                                        {"level", rep.plan.levels[g]},
                                        {"q", rep.plan.q[g].get_str()},
                                        {"count", rep.counts[g].get_str()}});
        os << j.dump(2) << "\n";
    }
}

// ---- singular ----------------------------------------------------------

void run_singular(const std::string& alpha_arg, const std::string& c_str,
                  long N, const std::string& plot, const Common& com) {
    Config cfg = make_cfg(com);
    Alpha al(RealNumberSpec::resolve(alpha_arg, cfg), cfg);
    Rat c = parse_rat(c_str);
    DensityReport rep = singular_average_density(al, c, N);

    Params ps = {{"command", "singular"},
                 {"alpha", alpha_arg},
                 {"c", rstr(c)},
                 {"N", std::to_string(N)},
                 {"solvable", std::to_string(rep.solvable_count)},
                 {"density", rstr(rep.density)},
                 {"construction", "dyadic-density"}};
    std::unique_ptr<std::ofstream> hold;
    std::ostream& os = open_out(com.output, hold);

    if (plot == "density") {
        csv_preamble(os, com, ps);
        os << "N,density,density_exact\n";
        size_t bi = 0;
        long bad_prefix = 0;
        for (long n = 1; n <= rep.N; ++n) {
            while (bi < rep.bad_ell.size() && rep.bad_ell[bi] <= n) {
                ++bad_prefix;
                ++bi;
            }
            Rat d = make_rat(Int(n - bad_prefix), Int(n));
            os << n << "," << d17(d.get_d()) << "," << rstr(d) << "\n";
        }
        return;
    }
    if (!plot.empty())
        throw precondition_error("singular supports only --plot density");

    if (com.format == "csv") {
        csv_preamble(os, com, ps);
        os << "ell,solvable,block_k\n";
        size_t bi = 0;
        for (long ell = 1; ell <= rep.N; ++ell) {
            bool bad = bi < rep.bad_ell.size() && rep.bad_ell[bi] == ell;
            if (bad) ++bi;
            os << ell << "," << (bad ? 0 : 1) << ","
               << convergent_block(al, ell) << "\n";
        }
    } else {
        json j = params_json(com, ps);
        j["c"] = rstr(rep.c);
        j["N"] = rep.N;
        j["solvable_count"] = rep.solvable_count;
        j["density"] = rstr(rep.density);
        j["bad_ell"] = rep.bad_ell;
        j["blocks"] = json::array();
        for (const auto& b : rep.blocks)
            j["blocks"].push_back({{"k", b.k},
                                   {"ell_lo", b.ell_lo},
                                   {"ell_hi", b.ell_hi},
                                   {"bad_count", b.bad_count}});
        os << j.dump(2) << "\n";
    }
}

// ---- matrix ------------------------------------------------------------

MatrixSpec load_matrix_spec(const std::string& arg, const Config& cfg) {
    std::string text = arg;
    if (!arg.empty() && arg[0] != '{') {
        std::ifstream in(arg);
        if (!in) throw precondition_error("cannot open matrix spec: " + arg);
        std::stringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    return MatrixSpec::from_json_text(text, cfg);
}

void run_matrix(const std::string& matrix_arg, const std::string& ymax_str,
                const std::string& delta_str, const Common& com) {
    Config cfg = make_cfg(com);
    MatrixSpec ms = load_matrix_spec(matrix_arg, cfg);
    MatrixForms A(ms, cfg);
    Int ymax = parse_int(ymax_str);
    BestApproxSeq seq = best_approx_sequence(A, ymax);

    Params ps = {{"command", "matrix"},
                 {"n", std::to_string(seq.n)},
                 {"m", std::to_string(seq.m)},
                 {"ymax", ymax.get_str()},
                 {"rank_assumption", seq.rank_assumption ? "1" : "0"},
                 {"doubling_ok", seq.doubling_ok ? "1" : "0"},
                 {"construction", "best-approx-sequence"}};

    std::optional<GridSet> gs;
    std::optional<RatInterval> limit;
    if (!delta_str.empty()) {
        Rat delta = parse_rat(delta_str);
        if (seq.items.empty())
            throw precondition_error("no best approximation to build a grid on");
        gs = grid_set(seq.items.back().y, delta, cfg);
        limit = transference_constant(seq.n, seq.m);
        bool sep = grid_separated(*gs, make_rat(Int(1), gs->y_h_abs));
        ps.push_back({"delta", rstr(delta)});
        ps.push_back({"grid_centers", std::to_string(gs->centers.size())});
        ps.push_back({"grid_radius", rstr(gs->radius)});
        ps.push_back({"grid_h", std::to_string(gs->h)});
        ps.push_back({"grid_separated", sep ? "1" : "0"});
        ps.push_back({"limit_lo", rstr(limit->lo)});
        ps.push_back({"limit_hi", rstr(limit->hi)});
    }

    std::unique_ptr<std::ofstream> hold;
    std::ostream& os = open_out(com.output, hold);
    if (com.format == "csv") {
        csv_preamble(os, com, ps);
        os << "i,Y";
        for (long i = 1; i <= seq.n; ++i) os << ",y_" << i;
        os << ",M_lo,M_hi\n";
        for (size_t i = 0; i < seq.items.size(); ++i) {
            const auto& it = seq.items[i];
            os << (i + 1) << "," << it.Y.get_str();
            for (const Int& v : it.y) os << "," << v.get_str();
            os << "," << rstr(it.M.lo) << "," << rstr(it.M.hi) << "\n";
        }
    } else {
        json j = params_json(com, ps);
        j["n"] = seq.n;
        j["m"] = seq.m;
        j["rank_assumption"] = seq.rank_assumption;
        j["doubling_ok"] = seq.doubling_ok;
        j["items"] = json::array();
        for (size_t i = 0; i < seq.items.size(); ++i) {
            const auto& it = seq.items[i];
            json y = json::array();
            for (const Int& v : it.y) y.push_back(v.get_str());
            j["items"].push_back({{"i", i + 1},
                                  {"Y", it.Y.get_str()},
                                  {"y", y},
                                  {"M_lo", rstr(it.M.lo)},
                                  {"M_hi", rstr(it.M.hi)}});
        }
        if (gs) {
            json centers = json::array();
            for (const auto& w : gs->centers) {
                json row = json::array();
                for (const Rat& v : w) row.push_back(rstr(v));
                centers.push_back(row);
            }
            j["grid"] = {{"centers", centers},
                         {"radius", rstr(gs->radius)},
                         {"h", gs->h},
                         {"y_h_abs", gs->y_h_abs.get_str()}};
            j["limit_lo"] = rstr(limit->lo);
            j["limit_hi"] = rstr(limit->hi);
        }
        os << j.dump(2) << "\n";
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact continued-fraction and approximation toolkit"};
    app.require_subcommand(1);

    std::string alpha, matrix, x_str, qlo = "1", qhi, mode = "positive";
    std::string thr, eps, gamma = "1/4", rule = "bitlog", c_str, nseq, delta;
    std::string ymax, M_str, plot;
    long K = 20, depth = 0, level = 1, N = 0;

    Common c_cf, c_gaps, c_scan, c_one, c_dims, c_sing, c_mat;

    CLI::App* s_cf = app.add_subcommand("cf", "convergent table");
    s_cf->add_option("--alpha", alpha, "number spec: fixture, file, or JSON")
        ->required();
    s_cf->add_option("--K", K, "last level to print");
    s_cf->add_option("--plot", plot, "series: growth");
    add_common(s_cf, c_cf, "csv");

    CLI::App* s_gaps = app.add_subcommand("gaps", "circle partition dump");
    s_gaps->add_option("--alpha", alpha, "number spec")->required();
    s_gaps->add_option("--level", level, "partition level")->required();
    add_common(s_gaps, c_gaps, "json");

    CLI::App* s_scan = app.add_subcommand("scan", "liminf window scan");
    s_scan->add_option("--alpha", alpha, "number spec")->required();
    s_scan->add_option("--x", x_str, "target, as p/q")->required();
    s_scan->add_option("--qlo", qlo, "window start");
    s_scan->add_option("--qhi", qhi, "window end")->required();
    s_scan->add_option("--mode", mode, "positive or two_sided")
        ->check(CLI::IsMember({"positive", "two_sided"}));
    s_scan->add_option("--threshold", thr, "collect q below this, as p/q");
    add_common(s_scan, c_scan, "json");

    CLI::App* s_one = app.add_subcommand("onesided", "avoidance chain");
    s_one->add_option("--alpha", alpha, "number spec")->required();
    s_one->add_option("--eps", eps, "target bound, as p/q")->required();
    s_one->add_option("--K", K, "start level")->required();
    s_one->add_option("--depth", depth, "chain steps")->required();
    s_one->add_option("--gamma-rule", rule, "bitlog or constant")
        ->check(CLI::IsMember({"bitlog", "constant"}));
    s_one->add_option("--gamma", gamma, "width for the constant rule");
    add_common(s_one, c_one, "json");

    CLI::App* s_dims = app.add_subcommand("dims", "cover statistics");
    s_dims->add_option("--alpha", alpha, "number spec (survivor flavor)");
    s_dims->add_option("--nseq", nseq, "comma list of scales (cover flavor)");
    s_dims->add_option("--eps", eps, "removal parameter, as p/q");
    s_dims->add_option("--delta", delta, "trim parameter, as p/q");
    s_dims->add_option("--K", K, "start level");
    s_dims->add_option("--depth", depth, "generations");
    s_dims->add_option("--M", M_str, "growth base, 0 = suggest");
    s_dims->add_option("--plot", plot, "series: counts or bound");
    add_common(s_dims, c_dims, "csv");

    CLI::App* s_sing = app.add_subcommand("singular", "dyadic solvability");
    s_sing->add_option("--alpha", alpha, "number spec")->required();
    s_sing->add_option("--c", c_str, "scale constant, as p/q")->required();
    s_sing->add_option("--N", N, "number of dyadic levels")->required();
    s_sing->add_option("--plot", plot, "series: density");
    add_common(s_sing, c_sing, "csv");

    CLI::App* s_mat = app.add_subcommand("matrix", "best approximation table");
    s_mat->add_option("--matrix", matrix, "matrix spec: file or JSON")
        ->required();
    s_mat->add_option("--ymax", ymax, "sup-norm bound")->required();
    s_mat->add_option("--delta", delta, "also build the target grid, as p/q");
    add_common(s_mat, c_mat, "csv");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (s_cf->parsed()) run_cf(alpha, K, plot, c_cf);
        else if (s_gaps->parsed()) run_gaps(alpha, level, c_gaps);
        else if (s_scan->parsed())
            run_scan(alpha, x_str, qlo, qhi, mode, thr, c_scan);
        else if (s_one->parsed())
            run_onesided(alpha, eps, K, depth, rule, gamma, c_one);
        else if (s_dims->parsed()) {
            bool cover = !nseq.empty(), surv = !alpha.empty();
            if (cover == surv)
                throw precondition_error(
                    "dims needs exactly one of --nseq (cover) or --alpha "
                    "(survivor)");
            if (cover)
                run_dims_cover(nseq, delta.empty() ? "1/4" : delta, depth,
                               plot, c_dims);
            else {
                if (eps.empty())
                    throw precondition_error("survivor flavor needs --eps");
                if (depth <= 0)
                    throw precondition_error("survivor flavor needs --depth");
                run_dims_survivor(alpha, eps, K, depth, M_str, plot, c_dims);
            }
        } else if (s_sing->parsed())
            run_singular(alpha, c_str, N, plot, c_sing);
        else if (s_mat->parsed()) run_matrix(matrix, ymax, delta, c_mat);
        return 0;
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.code();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

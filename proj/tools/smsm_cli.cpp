// smsm: command-line harness.
//
// Exit codes: 0 success and every verdict secure, 2 an insecure verdict or a
// failed decode (or no code found), 1 operational error.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "smsm/adversary.hpp"
#include "smsm/coset_code.hpp"
#include "smsm/gossip.hpp"
#include "smsm/network.hpp"
#include "smsm/parallel.hpp"
#include "smsm/pipeline.hpp"
#include "smsm/scenario.hpp"

namespace fs = std::filesystem;
using namespace smsm;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitInsecure = 2;

struct Common {
    std::optional<std::uint64_t> seed;
    std::string out;
    std::optional<std::size_t> trials;
    bool force = false;
    std::size_t parallel = 1;
};

void add_common(CLI::App* cmd, Common& c)
{
    cmd->add_option("--seed", c.seed, "Master seed (overrides the scenario)");
    cmd->add_option("--out", c.out, "Directory for report files");
    cmd->add_option("--trials", c.trials, "Number of seeded trials");
    cmd->add_flag("--force", c.force, "Run even if the feasibility check fails");
    cmd->add_option("--parallel", c.parallel, "Worker threads for independent trials/audits (0 = all cores)");
}

void write_out(const Common& c, const std::string& name, const std::string& content)
{
    if (c.out.empty())
        return;
    fs::create_directories(c.out);
    std::ofstream f(fs::path(c.out) / name, std::ios::binary);
    if (!f)
        throw std::runtime_error("cannot write " + (fs::path(c.out) / name).string());
    f << content;
}

Scenario load(const std::string& path, const Common& c)
{
    auto sc = load_scenario(path);
    if (c.seed) {
        sc.seed = *c.seed;
        sc.gossip.seed = *c.seed;
    }
    if (c.trials)
        sc.trials = *c.trials;
    return sc;
}

std::string fixed6(double v)
{
    std::ostringstream os;
    os << std::fixed << std::setprecision(6) << v;
    return os.str();
}

int cmd_mincut(const std::string& path, const Common& c)
{
    auto sc = load(path, c);
    if (sc.kind != ScenarioKind::multicast)
        throw std::invalid_argument("mincut needs a multicast scenario");
    const auto& spec = *sc.network;
    std::ostringstream os;
    os << "cut,from,to,value\n";
    std::vector<std::size_t> all;
    for (const auto& s : spec.sources())
        all.push_back(s.node);
    for (auto d : spec.destinations()) {
        for (const auto& s : spec.sources())
            os << "rho(s;d)," << spec.node_name(s.node) << ',' << spec.node_name(d) << ','
               << min_cut(spec, {s.node}, d) << '\n';
        if (!all.empty())
            os << "rho(S;d),S," << spec.node_name(d) << ',' << min_cut(spec, all, d) << '\n';
    }
    if (sc.w > 0 && !spec.edges().empty()) {
        const auto w = std::min(sc.w, spec.edges().size());
        auto sets = enumerate_wiretap_sets(spec.edges().size(), w, sc.wiretap_cap, sc.seed);
        for (const auto& set : sets.sets) {
            if (set.size() != w)
                continue;
            std::string label;
            for (auto e : set)
                label += (label.empty() ? "" : " ") + spec.edge_label(e);
            for (const auto& s : spec.sources())
                os << "rho(s;z)," << spec.node_name(s.node) << ",\"" << label << "\","
                   << eve_min_cut(spec, {s.node}, set) << '\n';
        }
    }
    std::cout << os.str();
    write_out(c, "mincut.csv", os.str());
    return kExitOk;
}

int cmd_audit_code(const CosetCode& code, std::size_t w, std::size_t k_s, const Common& c, std::uint64_t seed)
{
    AuditOptions opt;
    opt.w = w;
    opt.k_s = k_s;
    opt.seed = seed;
    opt.threads = resolve_threads(c.parallel);
    auto rep = coordinate_audit(make_encoder(code), opt);
    std::ostringstream os;
    os << "code: q=" << code.field().order() << " k=" << code.k() << " w=" << code.w() << '\n';
    os << "generator:\n" << to_string(code.generator());
    const bool lemma = code.w() == w ? check_lemma2(code) : false;
    if (code.w() == w)
        os << "every w columns of G independent: " << (lemma ? "yes" : "no") << '\n';
    os << rep.text();
    std::ostringstream csv;
    rep.write_csv(csv);
    std::cout << os.str();
    write_out(c, "audit.txt", os.str());
    write_out(c, "leakage.csv", csv.str());
    return rep.secure_protected() ? kExitOk : kExitInsecure;
}

int cmd_audit(const std::string& path, std::optional<std::size_t> w, std::size_t k_s, const Common& c)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open '" + path + "'");
    std::string first;
    in >> first;
    in.close();
    if (first == "smsm-scenario") {
        auto sc = load(path, c);
        if (sc.kind != ScenarioKind::code_audit)
            throw std::invalid_argument("audit takes a code descriptor or a code-audit scenario");
        if (w)
            sc.w = *w;
        std::size_t k = sc.k;
        if (sc.code.kind == CodeSelection::Kind::file) {
            std::ifstream cf(sc.code.path);
            if (!cf)
                throw std::runtime_error("cannot open code file '" + sc.code.path + "'");
            auto code = read_coset_code(cf);
            return cmd_audit_code(code, sc.w, sc.k_s, c, sc.seed);
        }
        auto codec = resolve_codec(sc, k);
        const auto* code = std::get_if<CosetCode>(&codec.code());
        if (!code)
            throw std::invalid_argument("audit supports coset codes only");
        return cmd_audit_code(*code, sc.w, sc.k_s, c, sc.seed);
    }
    std::ifstream cf(path);
    auto code = read_coset_code(cf);
    return cmd_audit_code(code, w.value_or(code.w()), k_s, c, c.seed.value_or(0));
}

int cmd_run_multicast(const Scenario& sc, const Common& c)
{
    MulticastOptions opt;
    opt.trials = sc.trials;
    opt.threads = resolve_threads(c.parallel);
    opt.force = c.force;
    auto res = run_multicast(sc, opt);
    const auto& spec = *sc.network;
    auto text = res.text(spec);
    std::cout << text;
    std::ostringstream leak, dec, pk;
    if (!res.trials.empty())
        res.trials.front().leakage.write_csv(leak);
    res.write_decode_csv(dec, spec);
    res.write_packet_csv(pk, spec);
    write_out(c, "report.txt", text);
    write_out(c, "leakage.csv", leak.str());
    write_out(c, "decode.csv", dec.str());
    write_out(c, "packets.csv", pk.str());
    const bool ok = res.decoded_trials() == res.trials.size() && res.secure_protected();
    return ok ? kExitOk : kExitInsecure;
}

int cmd_gossip(const Scenario& sc, const Common& c)
{
    if (sc.kind != ScenarioKind::gossip)
        throw std::invalid_argument("gossip needs a gossip scenario");
    const auto& cfg = sc.gossip;
    std::ostringstream os;
    os << "gossip: v=" << cfg.nodes << " q=" << cfg.q << " exchange=" << to_string(cfg.exchange)
       << " sources=" << cfg.sources.size() << " k=" << cfg.k << " w=" << sc.w << '\n';

    GossipConfig flood = cfg;
    flood.k = 1;
    auto est = estimate_flooding(flood, std::max<std::size_t>(sc.flood_trials, 1));
    os << "flooding: T=" << fixed6(est.t_hat) << " alpha=" << fixed6(est.alpha_hat)
       << (est.lower_bound ? " (lower bound)" : "") << " alpha_min=" << fixed6(est.alpha_min) << '\n';
    double bound = 0;
    if (est.alpha_hat > 0) {
        bound = theorem3_rounds(est.t_hat, est.alpha_hat, cfg.k, cfg.sources.size(), 0.05, cfg.q);
        os << "round bound T' (eps=0.05): " << fixed6(bound) << '\n';
    }

    auto codec = resolve_codec(sc, cfg.k);
    const auto* code = std::get_if<CosetCode>(&codec.code());
    if (!code)
        throw std::invalid_argument("gossip supports coset codes only");
    SecureGossipOptions opt;
    opt.k_s = sc.k_s;
    opt.capture = sc.capture;
    opt.threads = resolve_threads(c.parallel);
    MiCache cache;
    opt.cache = &cache;
    auto rep = secure_gossip_experiment(cfg, *code, sc.w, std::max<std::size_t>(sc.trials, 1), opt);
    os << rep.text();
    std::vector<double> coded(rep.coded_rounds.begin(), rep.coded_rounds.end());
    if (bound > 0)
        os << "p95 coded rounds " << percentile(coded, 95) << (percentile(coded, 95) <= bound + 2 ? " <= " : " > ")
           << "T' + 2\n";
    std::cout << os.str();
    std::ostringstream csv, trace;
    rep.write_csv(csv);
    if (rep.first_trace)
        write_trace(trace, *rep.first_trace);
    write_out(c, "gossip.txt", os.str());
    write_out(c, "rounds.csv", csv.str());
    write_out(c, "trace.csv", trace.str());
    const bool ok = rep.secure() && rep.decode_failures == 0 && rep.incomplete == 0;
    return ok ? kExitOk : kExitInsecure;
}

int cmd_run(const std::string& path, const Common& c)
{
    auto sc = load(path, c);
    switch (sc.kind) {
    case ScenarioKind::multicast:
        return cmd_run_multicast(sc, c);
    case ScenarioKind::gossip:
        return cmd_gossip(sc, c);
    case ScenarioKind::code_audit:
        return cmd_audit(path, std::nullopt, sc.k_s, c);
    }
    return kExitError;
}

std::uint64_t parse_budget(const std::string& s)
{
    if (s == "inf" || s == "unlimited")
        return kUnlimitedBudget;
    std::size_t pos = 0;
    auto v = std::stoull(s, &pos);
    if (pos != s.size())
        throw std::invalid_argument("bad budget '" + s + "'");
    return v;
}

int cmd_search_code(std::size_t k, std::size_t w, std::uint32_t q, const std::string& budget, const Common& c)
{
    auto res = search_code(k, w, Field(q), parse_budget(budget), c.seed.value_or(0));
    if (!res.code) {
        std::cerr << "no (k=" << k << ", w=" << w << ") code over GF(" << q << ") passes the check after "
                  << res.tried << (res.exhaustive ? " candidates (exhaustive: none exists)" : " random candidates")
                  << '\n';
        return kExitInsecure;
    }
    std::ostringstream os;
    write_coset_code(os, *res.code);
    std::cout << os.str();
    write_out(c, "code.txt", os.str());
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Individually secure multi-source multicast and gossip toolkit"};
    app.require_subcommand(1);

    Common common;
    std::string scenario;

    auto* mincut = app.add_subcommand("mincut", "Min-cut table for a multicast scenario");
    mincut->add_option("scenario", scenario, "Scenario file")->required();
    add_common(mincut, common);

    auto* run = app.add_subcommand("run", "Encode, disseminate, decode and audit a scenario");
    run->add_option("scenario", scenario, "Scenario file")->required();
    add_common(run, common);

    auto* gossip = app.add_subcommand("gossip", "Secure algebraic gossip experiment");
    gossip->add_option("scenario", scenario, "Gossip scenario file")->required();
    add_common(gossip, common);

    std::optional<std::size_t> audit_w;
    std::size_t audit_ks = 1;
    auto* audit = app.add_subcommand("audit", "Exact leakage audit of a coset code");
    audit->add_option("code", scenario, "Code descriptor or code-audit scenario")->required();
    audit->add_option("--w", audit_w, "Coordinates observed by the eavesdropper (default: the code's w)");
    audit->add_option("--ks", audit_ks, "Largest message subset size to audit");
    add_common(audit, common);

    std::size_t sk = 0, sw = 0;
    std::uint32_t sq = 2;
    std::string budget = "1000000";
    auto* search = app.add_subcommand("search-code", "Find a generator whose every w columns are independent");
    search->add_option("--k", sk, "Code length")->required();
    search->add_option("--w", sw, "Generator rows")->required();
    search->add_option("--q", sq, "Field order");
    search->add_option("--budget", budget, "Candidates to try, or 'inf'");
    add_common(search, common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitError;
    }

    try {
        if (*mincut)
            return cmd_mincut(scenario, common);
        if (*run)
            return cmd_run(scenario, common);
        if (*gossip)
            return cmd_gossip(load(scenario, common), common);
        if (*audit)
            return cmd_audit(scenario, audit_w, audit_ks, common);
        if (*search)
            return cmd_search_code(sk, sw, sq, budget, common);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitError;
    }
    return kExitError;
}

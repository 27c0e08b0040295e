#include "smsm/gossip.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "smsm/parallel.hpp"
#include "smsm/rng.hpp"

namespace smsm {

std::string to_string(Exchange e)
{
    switch (e) {
    case Exchange::push:
        return "push";
    case Exchange::pull:
        return "pull";
    case Exchange::push_pull:
        return "push-pull";
    }
    return "?";
}

Exchange parse_exchange(const std::string& s)
{
    if (s == "push")
        return Exchange::push;
    if (s == "pull")
        return Exchange::pull;
    if (s == "push-pull" || s == "pushpull" || s == "both")
        return Exchange::push_pull;
    throw std::invalid_argument("unknown exchange '" + s + "' (push, pull, push-pull)");
}

void GossipConfig::validate() const
{
    if (nodes < 2)
        throw std::invalid_argument("gossip needs at least 2 nodes");
    if (!is_supported_field_order(q))
        throw std::invalid_argument("unsupported field order " + std::to_string(q));
    auto sorted = sources;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw std::invalid_argument("duplicate gossip source");
    for (auto s : sources)
        if (s >= nodes)
            throw std::invalid_argument("gossip source " + std::to_string(s) + " is not a node");
    if (payload == 0)
        throw std::invalid_argument("payload length must be >= 1");
}

std::vector<std::size_t> round_calls(std::uint64_t seed, std::size_t round, std::size_t nodes)
{
    Rng rng(substream_seed(seed, "gossip-calls", round));
    std::vector<std::size_t> callee(nodes);
    for (std::size_t v = 0; v < nodes; ++v) {
        auto c = static_cast<std::size_t>(rng.uniform(nodes - 1));
        callee[v] = c >= v ? c + 1 : c;
    }
    return callee;
}

namespace {

// Rows in reduced echelon form over the first `dim` columns.
class Subspace {
public:
    Subspace(const Field& f, std::size_t dim, std::size_t width) : f_(f), dim_(dim), width_(width) {}

    std::size_t rank() const { return rows_.size(); }
    const std::vector<std::vector<Element>>& rows() const { return rows_; }

    bool insert(std::vector<Element> v)
    {
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            const auto c = v[pivots_[i]];
            if (c != 0)
                axpy(v, f_.neg(c), rows_[i]);
        }
        std::size_t p = 0;
        while (p < dim_ && v[p] == 0)
            ++p;
        if (p == dim_)
            return false;
        const auto inv = f_.inv(v[p]);
        for (auto& e : v)
            e = f_.mul(e, inv);
        for (auto& r : rows_) {
            const auto c = r[p];
            if (c != 0)
                axpy(r, f_.neg(c), v);
        }
        auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), p) - pivots_.begin();
        pivots_.insert(pivots_.begin() + pos, p);
        rows_.insert(rows_.begin() + pos, std::move(v));
        return true;
    }

    // Rows are independent, so the combination is zero iff every coefficient is.
    std::vector<Element> combine(Rng& rng, bool nonzero) const
    {
        std::vector<Element> coeff(rows_.size());
        bool any = false;
        do {
            any = false;
            for (auto& c : coeff) {
                c = static_cast<Element>(rng.uniform(f_.order()));
                any = any || c != 0;
            }
        } while (nonzero && !any && !rows_.empty());
        std::vector<Element> out(width_, 0);
        for (std::size_t i = 0; i < rows_.size(); ++i)
            if (coeff[i] != 0)
                axpy(out, coeff[i], rows_[i]);
        return out;
    }

    Matrix matrix() const
    {
        Matrix m(f_, 0, width_);
        for (const auto& r : rows_)
            m.append_row(r);
        return m;
    }

private:
    void axpy(std::vector<Element>& y, Element a, const std::vector<Element>& x) const
    {
        for (std::size_t t = 0; t < width_; ++t)
            if (x[t] != 0)
                y[t] = f_.add(y[t], f_.mul(a, x[t]));
    }

    Field f_;
    std::size_t dim_, width_;
    std::vector<std::vector<Element>> rows_;
    std::vector<std::size_t> pivots_;
};

bool caller_active(Exchange ex, bool informed)
{
    // Pure PULL cannot progress unless uninformed nodes call to pull.
    return informed || ex == Exchange::pull;
}

}  // namespace

GossipTrace run(const GossipConfig& config, const std::vector<Matrix>& rows)
{
    config.validate();
    const Field f(config.q);
    const std::size_t ns = config.sources.size();
    if (!rows.empty() && rows.size() != ns)
        throw std::invalid_argument("gossip run: one row matrix per source required");
    GossipTrace trace;
    for (std::size_t i = 0; i < ns; ++i) {
        const std::size_t r = rows.empty() ? config.k : rows[i].rows();
        if (!rows.empty() && (rows[i].cols() != config.payload || !(rows[i].field() == f)))
            throw std::invalid_argument("gossip run: source rows must be (k x payload) over GF(q)");
        trace.layout.offset.push_back(trace.layout.total);
        trace.layout.rows.push_back(r);
        trace.layout.total += r;
    }
    const std::size_t dim = trace.layout.total;
    const std::size_t width = dim + config.payload;
    const std::size_t n = config.nodes;

    std::vector<Subspace> state(n, Subspace(f, dim, width));
    for (std::size_t i = 0; i < ns; ++i) {
        for (std::size_t r = 0; r < trace.layout.rows[i]; ++r) {
            std::vector<Element> v(width, 0);
            v[trace.layout.offset[i] + r] = 1;
            if (!rows.empty())
                for (std::size_t t = 0; t < config.payload; ++t)
                    v[dim + t] = rows[i](r, t);
            state[config.sources[i]].insert(std::move(v));
        }
    }
    auto snapshot_ranks = [&] {
        std::vector<std::size_t> rk(n);
        for (std::size_t v = 0; v < n; ++v)
            rk[v] = state[v].rank();
        return rk;
    };
    auto all_full = [&] {
        return std::all_of(state.begin(), state.end(), [&](const Subspace& s) { return s.rank() == dim; });
    };
    trace.ranks.push_back(snapshot_ranks());
    if (all_full())
        trace.completion_round = 0;

    Rng coeff(substream_seed(config.seed, "gossip-coefficients"));
    const bool push = config.exchange != Exchange::pull;
    const bool pull = config.exchange != Exchange::push;
    for (std::size_t t = 1; !trace.completion_round && t <= config.max_rounds; ++t) {
        auto callees = round_calls(config.seed, t, n);
        std::vector<bool> informed(n);
        for (std::size_t v = 0; v < n; ++v)
            informed[v] = state[v].rank() > 0;
        std::vector<Transfer> round;
        auto send = [&](std::size_t caller, std::size_t callee, Direction d, std::size_t from, std::size_t to) {
            auto vec = state[from].combine(coeff, config.rule == CoefficientRule::uniform_nonzero);
            Transfer tr;
            tr.round = t;
            tr.caller = caller;
            tr.callee = callee;
            tr.direction = d;
            tr.from = from;
            tr.to = to;
            tr.packet.edge = trace.transfers.size() + round.size();
            tr.packet.coding.assign(vec.begin(), vec.begin() + static_cast<long>(dim));
            tr.packet.payload.assign(vec.begin() + static_cast<long>(dim), vec.end());
            round.push_back(std::move(tr));
        };
        // All packets of a round are drawn before any is delivered.
        for (std::size_t v = 0; v < n; ++v) {
            if (!caller_active(config.exchange, informed[v]))
                continue;
            const auto c = callees[v];
            if (push && informed[v])
                send(v, c, Direction::push, v, c);
            if (pull && informed[c])
                send(v, c, Direction::pull, c, v);
        }
        for (const auto& tr : round) {
            std::vector<Element> vec(tr.packet.coding);
            vec.insert(vec.end(), tr.packet.payload.begin(), tr.packet.payload.end());
            state[tr.to].insert(std::move(vec));
        }
        for (auto& tr : round)
            trace.transfers.push_back(std::move(tr));
        trace.calls.push_back(std::move(callees));
        trace.ranks.push_back(snapshot_ranks());
        if (all_full())
            trace.completion_round = t;
    }
    for (const auto& s : state)
        trace.final_basis.push_back(s.matrix());
    return trace;
}

std::optional<std::vector<Matrix>> decode_node(const GossipTrace& trace, std::size_t node)
{
    const auto& basis = trace.final_basis.at(node);
    const std::size_t dim = trace.layout.total;
    if (basis.rows() != dim)
        return std::nullopt;
    // Full rank in reduced echelon form: the coding block is the identity.
    const std::size_t c = basis.cols() - dim;
    std::vector<Matrix> out;
    for (std::size_t i = 0; i < trace.layout.rows.size(); ++i) {
        Matrix m(basis.field(), trace.layout.rows[i], c);
        for (std::size_t r = 0; r < trace.layout.rows[i]; ++r)
            for (std::size_t t = 0; t < c; ++t)
                m(r, t) = basis(trace.layout.offset[i] + r, dim + t);
        out.push_back(std::move(m));
    }
    return out;
}

std::size_t flood_once(const GossipConfig& config, std::size_t start, std::uint64_t seed)
{
    const std::size_t n = config.nodes;
    if (start >= n)
        throw std::invalid_argument("flood start is not a node");
    std::vector<bool> informed(n, false);
    informed[start] = true;
    std::size_t count = 1;
    const bool push = config.exchange != Exchange::pull;
    const bool pull = config.exchange != Exchange::push;
    for (std::size_t t = 1; t <= config.max_rounds; ++t) {
        auto callees = round_calls(seed, t, n);
        auto next = informed;
        for (std::size_t v = 0; v < n; ++v) {
            if (!caller_active(config.exchange, informed[v]))
                continue;
            const auto c = callees[v];
            if (push && informed[v])
                next[c] = true;
            if (pull && informed[c])
                next[v] = true;
        }
        informed = std::move(next);
        count = static_cast<std::size_t>(std::count(informed.begin(), informed.end(), true));
        if (count == n)
            return t;
    }
    return config.max_rounds;
}

double percentile(std::vector<double> values, double p)
{
    if (values.empty())
        throw std::invalid_argument("percentile of an empty sample");
    if (!(p > 0 && p <= 100))
        throw std::invalid_argument("percentile must be in (0, 100]");
    std::sort(values.begin(), values.end());
    auto rank = static_cast<std::size_t>(std::ceil(p / 100.0 * static_cast<double>(values.size())));
    return values[std::max<std::size_t>(rank, 1) - 1];
}

FloodingEstimate estimate_flooding(const GossipConfig& config, std::size_t trials)
{
    config.validate();
    if (trials == 0)
        throw std::invalid_argument("estimate_flooding needs trials > 0");
    const std::size_t n = config.nodes;
    const double logq = std::log(static_cast<double>(config.q));
    FloodingEstimate est;
    std::vector<std::vector<double>> per_vertex(n);
    for (std::size_t v = 0; v < n; ++v) {
        for (std::size_t i = 0; i < trials; ++i) {
            auto s = flood_once(config, v, substream_seed(config.seed, "flooding", v * trials + i));
            per_vertex[v].push_back(static_cast<double>(s));
            est.samples.push_back(s);
        }
        est.t_hat = std::max(est.t_hat, percentile(per_vertex[v], 50));
    }
    for (std::size_t j = 1;; ++j) {
        double worst = 0;
        for (const auto& xs : per_vertex) {
            auto hits = std::count_if(xs.begin(), xs.end(), [&](double s) { return s >= est.t_hat + j; });
            worst = std::max(worst, static_cast<double>(hits) / static_cast<double>(xs.size()));
        }
        if (worst == 0)
            break;
        est.tail.push_back(worst);
    }
    if (est.tail.empty()) {
        // P[S_F >= T + 1] < 1/trials for every vertex.
        est.lower_bound = true;
        est.alpha_hat = est.alpha_min = std::log(static_cast<double>(trials)) / logq;
        return est;
    }
    double sxy = 0, sxx = 0;
    est.alpha_min = std::numeric_limits<double>::infinity();
    for (std::size_t j = 1; j <= est.tail.size(); ++j) {
        const double y = -std::log(est.tail[j - 1]) / logq;
        sxy += static_cast<double>(j) * y;
        sxx += static_cast<double>(j * j);
        est.alpha_min = std::min(est.alpha_min, y / static_cast<double>(j));
    }
    est.alpha_hat = sxy / sxx;
    for (std::size_t j = 1; j <= est.tail.size(); ++j)
        est.residuals.push_back(-std::log(est.tail[j - 1]) / logq - est.alpha_hat * static_cast<double>(j));
    if (est.alpha_hat <= 0 || est.alpha_min <= 0) {
        // Every trial is slower than T + j for the observed j: no usable decay.
        est.lower_bound = true;
        est.alpha_hat = std::max(est.alpha_hat, 1e-9);
        est.alpha_min = std::max(est.alpha_min, 1e-9);
    }
    return est;
}

double theorem3_rounds(double t, double alpha, std::size_t k, std::size_t num_sources, double eps,
                       std::uint32_t q)
{
    if (!(alpha > 0))
        throw std::invalid_argument("alpha must be positive");
    if (!(eps > 0 && eps < 1))
        throw std::invalid_argument("eps must be in (0, 1)");
    if (q < 2)
        throw std::invalid_argument("field order must be >= 2");
    const double log_inv_eps = std::log(1.0 / eps) / std::log(static_cast<double>(q));
    return t + (static_cast<double>(k * num_sources) + log_inv_eps) / alpha;
}

MannWhitney mann_whitney(const std::vector<double>& a, const std::vector<double>& b)
{
    MannWhitney res;
    const double n1 = static_cast<double>(a.size());
    const double n2 = static_cast<double>(b.size());
    if (a.empty() || b.empty())
        return res;
    std::vector<std::pair<double, int>> all;
    for (auto x : a)
        all.emplace_back(x, 0);
    for (auto x : b)
        all.emplace_back(x, 1);
    std::sort(all.begin(), all.end());
    const double N = n1 + n2;
    double r1 = 0, ties = 0;
    for (std::size_t i = 0; i < all.size();) {
        std::size_t j = i;
        while (j < all.size() && all[j].first == all[i].first)
            ++j;
        const double avg = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
        const double t = static_cast<double>(j - i);
        ties += t * t * t - t;
        for (std::size_t p = i; p < j; ++p)
            if (all[p].second == 0)
                r1 += avg;
        i = j;
    }
    res.u = r1 - n1 * (n1 + 1) / 2;
    const double mu = n1 * n2 / 2;
    const double var = n1 * n2 / 12.0 * ((N + 1) - ties / (N * (N - 1)));
    if (var <= 0)
        return res;
    const double diff = std::max(0.0, std::abs(res.u - mu) - 0.5);
    res.z = diff / std::sqrt(var);
    res.p_value = std::erfc(res.z / std::sqrt(2.0));
    return res;
}

std::string SecureGossipReport::text() const
{
    auto as_double = [](const std::vector<std::size_t>& v) {
        return std::vector<double>(v.begin(), v.end());
    };
    std::ostringstream os;
    os << "secure gossip experiment\n";
    os << "  trials: " << trials << ", w = " << w << '\n';
    if (!coded_rounds.empty()) {
        os << "  coded completion rounds: median " << percentile(as_double(coded_rounds), 50) << ", p95 "
           << percentile(as_double(coded_rounds), 95) << '\n';
        os << "  uncoded completion rounds: median " << percentile(as_double(uncoded_rounds), 50)
           << ", p95 " << percentile(as_double(uncoded_rounds), 95) << '\n';
    }
    os << "  incomplete runs: " << incomplete << '\n';
    os << "  decode failures: " << decode_failures << '\n';
    os << std::setprecision(6);
    os << "  Mann-Whitney U = " << test.u << ", z = " << test.z << ", p = " << test.p_value
       << (indistinguishable() ? " (indistinguishable" : " (different") << " at " << significance << ")\n";
    os << "  audited trials: " << audited_trials << (audit_exhaustive ? "" : " (some audits sampled)") << '\n';
    os << "  trials leaking protected messages: " << leaking_trials << '\n';
    os << "  max MI protected: " << max_mi_protected << " bits, any subset: " << max_mi_all << " bits\n";
    os << "  verdict: " << (secure() ? "SECURE" : "INSECURE") << '\n';
    return os.str();
}

void SecureGossipReport::write_csv(std::ostream& out) const
{
    out << "trial,coded_rounds,uncoded_rounds\n";
    for (std::size_t i = 0; i < coded_rounds.size(); ++i)
        out << i << ',' << coded_rounds[i] << ',' << (i < uncoded_rounds.size() ? uncoded_rounds[i] : 0) << '\n';
}

namespace {

Matrix random_matrix(const Field& f, std::size_t rows, std::size_t cols, Rng& rng)
{
    Matrix m(f, rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            m(r, c) = static_cast<Element>(rng.uniform(f.order()));
    return m;
}

struct TrialOutcome {
    std::size_t coded = 0, uncoded = 0;
    bool incomplete = false;
    bool decode_failure = false;
    bool leaked = false;
    bool audited = false;
    double mi_protected = 0, mi_all = 0;
};

}  // namespace

SecureGossipReport secure_gossip_experiment(const GossipConfig& config, const CosetCode& code, std::size_t w,
                                            std::size_t trials, const SecureGossipOptions& options)
{
    config.validate();
    const Field f(config.q);
    if (!(code.field() == f))
        throw std::invalid_argument("coset code field differs from the gossip field");
    if (code.k() != config.k)
        throw std::invalid_argument("coset code k differs from the gossip k");
    SecureGossipReport rep;
    rep.trials = trials;
    rep.w = w;
    rep.significance = options.significance;
    const auto encoder = make_encoder(code);
    const std::vector<EncoderPtr> encoders(config.sources.size(), encoder);
    std::vector<TrialOutcome> outcomes(trials);

    parallel_for(trials, options.threads, [&](std::size_t i) {
        TrialOutcome& o = outcomes[i];
        GossipConfig cfg = config;
        cfg.seed = substream_seed(config.seed, "gossip-coded", i);
        Rng msg_rng(substream_seed(cfg.seed, "messages"));
        std::vector<Matrix> messages, codewords;
        for (std::size_t s = 0; s < cfg.sources.size(); ++s) {
            messages.push_back(random_matrix(f, cfg.k, cfg.payload, msg_rng));
            codewords.push_back(code.encode_matrix({s, messages.back()}).data);
        }
        auto trace = run(cfg, codewords);
        o.incomplete = !trace.completion_round;
        o.coded = trace.completion_round.value_or(cfg.max_rounds);
        if (trace.completion_round) {
            for (std::size_t v = 0; v < cfg.nodes && !o.decode_failure; ++v) {
                auto got = decode_node(trace, v);
                if (!got) {
                    o.decode_failure = true;
                    break;
                }
                for (std::size_t s = 0; s < got->size(); ++s)
                    if (!(code.decode_matrix({s, (*got)[s]}).data == messages[s]))
                        o.decode_failure = true;
            }
        }
        if (w > 0) {
            Rng eve(substream_seed(cfg.seed, "adversary"));
            std::vector<std::size_t> idx(trace.transfers.size());
            for (std::size_t t = 0; t < idx.size(); ++t)
                idx[t] = t;
            eve.shuffle(idx);
            std::vector<Packet> captured;
            for (std::size_t t = 0; t < std::min(w, idx.size()); ++t)
                captured.push_back(trace.transfers[idx[t]].packet);
            auto obs = canonicalize(f, trace.layout.total, cfg.payload, captured);
            AuditOptions opt;
            opt.w = w;
            opt.k_s = options.k_s;
            opt.capture = options.capture;
            opt.cache = options.cache;
            LeakageReport lr;
            lr.k_s = options.k_s;
            lr.entries = audit_capture(obs, trace.layout, encoders, opt, "calls");
            o.audited = true;
            o.leaked = !lr.secure_protected();
            o.mi_protected = lr.max_mi_protected();
            o.mi_all = lr.max_mi();
        }

        if (i == 0)
            rep.first_trace = trace;

        GossipConfig base = config;
        base.seed = substream_seed(config.seed, "gossip-uncoded", i);
        Rng raw_rng(substream_seed(base.seed, "messages"));
        std::vector<Matrix> raw;
        for (std::size_t s = 0; s < base.sources.size(); ++s)
            raw.push_back(random_matrix(f, base.k, base.payload, raw_rng));
        auto plain = run(base, raw);
        o.uncoded = plain.completion_round.value_or(base.max_rounds);
        o.incomplete = o.incomplete || !plain.completion_round;
    });

    std::vector<double> a, b;
    for (const auto& o : outcomes) {
        rep.coded_rounds.push_back(o.coded);
        rep.uncoded_rounds.push_back(o.uncoded);
        a.push_back(static_cast<double>(o.coded));
        b.push_back(static_cast<double>(o.uncoded));
        rep.incomplete += o.incomplete ? 1 : 0;
        rep.decode_failures += o.decode_failure ? 1 : 0;
        rep.leaking_trials += o.leaked ? 1 : 0;
        rep.audited_trials += o.audited ? 1 : 0;
        rep.max_mi_protected = std::max(rep.max_mi_protected, o.mi_protected);
        rep.max_mi_all = std::max(rep.max_mi_all, o.mi_all);
    }
    rep.test = mann_whitney(a, b);
    return rep;
}

void write_trace(std::ostream& out, const GossipTrace& trace)
{
    out << "round,caller,callee,direction,from,to,coding,payload_digest\n";
    for (const auto& t : trace.transfers) {
        std::uint64_t h = 0xCBF29CE484222325ull;
        for (auto v : t.packet.payload)
            h = splitmix64(h ^ v);
        out << t.round << ',' << t.caller << ',' << t.callee << ','
            << (t.direction == Direction::push ? "push" : "pull") << ',' << t.from << ',' << t.to << ',';
        for (std::size_t i = 0; i < t.packet.coding.size(); ++i)
            out << (i ? " " : "") << t.packet.coding[i];
        out << ',' << std::hex << std::setw(16) << std::setfill('0') << h << std::dec << std::setfill(' ') << '\n';
    }
}

}  // namespace smsm

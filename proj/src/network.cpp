#include "smsm/network.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <sstream>

#include "smsm/combinatorics.hpp"
#include "smsm/rng.hpp"

namespace smsm {

std::size_t NetworkSpec::add_node(const std::string& name)
{
    if (name.empty())
        throw std::invalid_argument("node name must not be empty");
    if (find_node(name))
        throw std::invalid_argument("duplicate node '" + name + "'");
    names_.push_back(name);
    return names_.size() - 1;
}

std::optional<std::size_t> NetworkSpec::find_node(const std::string& name) const
{
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end())
        return std::nullopt;
    return static_cast<std::size_t>(it - names_.begin());
}

std::size_t NetworkSpec::node(const std::string& name) const
{
    auto v = find_node(name);
    if (!v)
        throw std::invalid_argument("unknown node '" + name + "'");
    return *v;
}

void NetworkSpec::add_link(std::size_t from, std::size_t to, std::size_t multiplicity)
{
    if (from >= names_.size() || to >= names_.size())
        throw std::invalid_argument("link endpoint out of range");
    if (from == to)
        throw std::invalid_argument("self loop on '" + names_[from] + "'");
    for (const auto& e : edges_)
        if (e.from == from && e.to == to)
            throw std::invalid_argument("duplicate link " + names_[from] + "->" + names_[to] +
                                        " (use a multiplicity instead)");
    for (std::size_t i = 0; i < multiplicity; ++i) {
        edges_.push_back({from, to});
        copy_index_.push_back(i);
        copies_.push_back(multiplicity);
    }
}

std::string NetworkSpec::edge_label(std::size_t e) const
{
    const auto& ed = edges_.at(e);
    std::string s = names_[ed.from] + "->" + names_[ed.to];
    if (copies_[e] > 1)
        s += "#" + std::to_string(copy_index_[e]);
    return s;
}

void NetworkSpec::add_source(std::size_t node, std::size_t k)
{
    if (node >= names_.size())
        throw std::invalid_argument("source node out of range");
    for (const auto& s : sources_)
        if (s.node == node)
            throw std::invalid_argument("duplicate source '" + names_[node] + "'");
    sources_.push_back({node, k});
}

void NetworkSpec::add_destination(std::size_t node)
{
    if (node >= names_.size())
        throw std::invalid_argument("destination node out of range");
    if (std::find(destinations_.begin(), destinations_.end(), node) != destinations_.end())
        throw std::invalid_argument("duplicate destination '" + names_[node] + "'");
    destinations_.push_back(node);
}

bool NetworkSpec::sources_overlap_destinations() const
{
    for (const auto& s : sources_)
        if (std::find(destinations_.begin(), destinations_.end(), s.node) != destinations_.end())
            return true;
    return false;
}

std::vector<std::size_t> NetworkSpec::topological_order() const
{
    std::vector<std::size_t> indeg(names_.size(), 0);
    std::vector<std::vector<std::size_t>> out(names_.size());
    for (const auto& e : edges_) {
        ++indeg[e.to];
        out[e.from].push_back(e.to);
    }
    std::vector<std::size_t> order;
    std::vector<std::size_t> ready;
    for (std::size_t v = 0; v < names_.size(); ++v)
        if (indeg[v] == 0)
            ready.push_back(v);
    while (!ready.empty()) {
        auto it = std::min_element(ready.begin(), ready.end());
        std::size_t v = *it;
        ready.erase(it);
        order.push_back(v);
        for (auto u : out[v])
            if (--indeg[u] == 0)
                ready.push_back(u);
    }
    if (order.size() != names_.size())
        throw UnsupportedTopology("network has a directed cycle; only acyclic networks are supported");
    return order;
}

bool NetworkSpec::is_acyclic() const
{
    try {
        topological_order();
        return true;
    } catch (const UnsupportedTopology&) {
        return false;
    }
}

NetworkSpec two_source_four_sink_network(Field field, std::size_t k, std::size_t payload)
{
    NetworkSpec net(std::move(field), payload);
    for (const char* n : {"s1", "s2", "r1", "r2", "r3", "r4", "d1", "d2", "d3", "d4"})
        net.add_node(n);
    net.add_link(net.node("s1"), net.node("r1"));
    net.add_link(net.node("s1"), net.node("r2"));
    net.add_link(net.node("s2"), net.node("r3"));
    net.add_link(net.node("s2"), net.node("r4"));
    for (const char* r : {"r1", "r2", "r3", "r4"})
        for (const char* d : {"d1", "d2", "d3", "d4"})
            net.add_link(net.node(r), net.node(d));
    net.add_source(net.node("s1"), k);
    net.add_source(net.node("s2"), k);
    for (const char* d : {"d1", "d2", "d3", "d4"})
        net.add_destination(net.node(d));
    return net;
}

namespace {

constexpr std::size_t kInf = std::numeric_limits<std::size_t>::max() / 4;

class FlowGraph {
public:
    explicit FlowGraph(std::size_t n) : adj_(n) {}

    std::size_t add_node()
    {
        adj_.emplace_back();
        return adj_.size() - 1;
    }

    void add_arc(std::size_t u, std::size_t v, std::size_t cap)
    {
        adj_[u].push_back(arcs_.size());
        arcs_.push_back({v, cap});
        adj_[v].push_back(arcs_.size());
        arcs_.push_back({u, 0});
    }

    // Edmonds-Karp.
    std::size_t max_flow(std::size_t s, std::size_t t)
    {
        std::size_t flow = 0;
        std::vector<std::size_t> via(adj_.size());
        while (true) {
            std::fill(via.begin(), via.end(), kNone);
            std::deque<std::size_t> queue{s};
            std::vector<bool> seen(adj_.size(), false);
            seen[s] = true;
            while (!queue.empty() && !seen[t]) {
                auto u = queue.front();
                queue.pop_front();
                for (auto a : adj_[u]) {
                    const auto& arc = arcs_[a];
                    if (arc.cap > 0 && !seen[arc.to]) {
                        seen[arc.to] = true;
                        via[arc.to] = a;
                        queue.push_back(arc.to);
                    }
                }
            }
            if (!seen[t])
                return flow;
            std::size_t push = kInf;
            for (auto v = t; v != s; v = arcs_[via[v] ^ 1].to)
                push = std::min(push, arcs_[via[v]].cap);
            for (auto v = t; v != s; v = arcs_[via[v] ^ 1].to) {
                arcs_[via[v]].cap -= push;
                arcs_[via[v] ^ 1].cap += push;
            }
            flow += push;
            if (flow >= kInf)
                return flow;
        }
    }

private:
    static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
    struct Arc {
        std::size_t to;
        std::size_t cap;
    };
    std::vector<std::vector<std::size_t>> adj_;
    std::vector<Arc> arcs_;
};

}  // namespace

std::size_t min_cut(const NetworkSpec& spec, const std::vector<std::size_t>& from, std::size_t to)
{
    if (to >= spec.node_count())
        throw std::invalid_argument("min_cut: sink out of range");
    if (std::find(from.begin(), from.end(), to) != from.end())
        throw std::invalid_argument("min_cut: sink is one of the sources");
    FlowGraph g(spec.node_count());
    for (const auto& e : spec.edges())
        g.add_arc(e.from, e.to, 1);
    const auto super = g.add_node();
    for (auto s : from) {
        if (s >= spec.node_count())
            throw std::invalid_argument("min_cut: source out of range");
        g.add_arc(super, s, kInf);
    }
    return g.max_flow(super, to);
}

std::size_t eve_min_cut(const NetworkSpec& spec, const std::vector<std::size_t>& from,
                        const std::vector<std::size_t>& wiretap_edges)
{
    std::vector<bool> tapped(spec.edges().size(), false);
    for (auto e : wiretap_edges) {
        if (e >= spec.edges().size())
            throw std::invalid_argument("eve_min_cut: wiretap edge out of range");
        tapped[e] = true;
    }
    FlowGraph g(spec.node_count());
    const auto z = g.add_node();
    for (std::size_t i = 0; i < spec.edges().size(); ++i) {
        const auto& e = spec.edges()[i];
        if (!tapped[i]) {
            g.add_arc(e.from, e.to, 1);
            continue;
        }
        const auto mid = g.add_node();
        g.add_arc(e.from, mid, 1);
        g.add_arc(mid, e.to, 1);
        g.add_arc(mid, z, kInf);
    }
    const auto super = g.add_node();
    for (auto s : from)
        g.add_arc(super, s, kInf);
    return g.max_flow(super, z);
}

std::string FeasibilityReport::text() const
{
    std::ostringstream os;
    auto section = [&](const std::string& title, const std::vector<CutCondition>& conds, bool ok) {
        os << title << ": " << (ok ? "feasible" : "infeasible") << '\n';
        for (const auto& c : conds)
            os << "  " << (c.holds() ? "ok       " : "VIOLATED ") << c.name << "  [" << c.subject
               << "]  required " << c.required << ", actual " << c.actual << '\n';
    };
    section("individual security", individual, individual_feasible);
    section("naive strong security, w=" + std::to_string(w), naive_strong, naive_strong_feasible);
    return os.str();
}

std::optional<CutCondition> FeasibilityReport::first_violation() const
{
    for (const auto& c : individual)
        if (!c.holds())
            return c;
    return std::nullopt;
}

namespace {

FeasibilityReport feasibility_impl(const NetworkSpec& spec, const std::vector<std::size_t>& ks,
                                   std::size_t w)
{
    FeasibilityReport rep;
    rep.w = w;
    const auto& srcs = spec.sources();
    const auto& dsts = spec.destinations();
    bool nonempty = !srcs.empty() && !dsts.empty();
    if (!nonempty) {
        CutCondition c{"session has >= 1 source and >= 1 destination", "instance", 1, 0};
        rep.individual.push_back(c);
        rep.naive_strong.push_back(c);
    }
    std::vector<std::size_t> all;
    for (const auto& s : srcs)
        all.push_back(s.node);
    for (auto d : dsts) {
        std::size_t ksum = 0;
        for (std::size_t i = 0; i < srcs.size(); ++i) {
            const auto rho = min_cut(spec, {srcs[i].node}, d);
            const auto subj = spec.node_name(srcs[i].node) + " -> " + spec.node_name(d);
            rep.individual.push_back({"rho(s,d) >= k", subj, ks[i], rho});
            rep.naive_strong.push_back({"rho(s,d) >= k+w", subj, ks[i] + w, rho});
            ksum += ks[i];
        }
        if (srcs.empty())
            continue;
        const auto rho = min_cut(spec, all, d);
        const auto subj = "S -> " + spec.node_name(d);
        rep.individual.push_back({"rho(S,d) >= k|S|", subj, ksum, rho});
        rep.naive_strong.push_back({"rho(S,d) >= (k+w)|S|", subj, ksum + w * srcs.size(), rho});
    }
    auto all_hold = [](const std::vector<CutCondition>& v) {
        return std::all_of(v.begin(), v.end(), [](const CutCondition& c) { return c.holds(); });
    };
    rep.individual_feasible = nonempty && all_hold(rep.individual);
    rep.naive_strong_feasible = nonempty && all_hold(rep.naive_strong);
    return rep;
}

}  // namespace

FeasibilityReport feasibility_check(const NetworkSpec& spec, std::size_t w)
{
    std::vector<std::size_t> ks;
    for (const auto& s : spec.sources())
        ks.push_back(s.k);
    return feasibility_impl(spec, ks, w);
}

FeasibilityReport feasibility_check(const NetworkSpec& spec, std::size_t k, std::size_t w)
{
    return feasibility_impl(spec, std::vector<std::size_t>(spec.sources().size(), k), w);
}

Matrix NodeState::decoding_matrix() const
{
    Matrix m(field, 0, dimension);
    for (const auto& p : received)
        m.append_row(p.coding);
    return m;
}

std::size_t NodeState::rank() const { return smsm::rank(decoding_matrix()); }

RlncRun rlnc_run(const NetworkSpec& spec, const std::vector<CodewordMatrix>& codewords,
                 std::uint64_t seed, RlncOptions options)
{
    const auto& srcs = spec.sources();
    if (codewords.size() != srcs.size())
        throw std::invalid_argument("rlnc_run: need one codeword matrix per source");
    const Field& f = spec.field();
    const std::size_t c = spec.payload_length();
    RlncRun run;
    for (const auto& cw : codewords) {
        if (!(cw.data.field() == f) || cw.data.cols() != c)
            throw std::invalid_argument("rlnc_run: codeword matrix must be rows x c over the network field");
        run.layout.offset.push_back(run.layout.total);
        run.layout.rows.push_back(cw.data.rows());
        run.layout.total += cw.data.rows();
    }
    const auto order = spec.topological_order();
    const std::size_t dim = run.layout.total;

    run.states.resize(spec.node_count());
    // Known vectors per node: [coding | payload].
    std::vector<std::vector<Packet>> known(spec.node_count());
    for (std::size_t v = 0; v < spec.node_count(); ++v) {
        run.states[v].node = v;
        run.states[v].dimension = dim;
        run.states[v].field = f;
    }
    for (std::size_t i = 0; i < srcs.size(); ++i) {
        for (std::size_t r = 0; r < codewords[i].data.rows(); ++r) {
            Packet p;
            p.edge = std::numeric_limits<std::size_t>::max();
            p.coding.assign(dim, 0);
            p.coding[run.layout.offset[i] + r] = 1;
            auto row = codewords[i].data.row(r);
            p.payload.assign(row.begin(), row.end());
            known[srcs[i].node].push_back(std::move(p));
        }
    }

    std::vector<std::vector<std::size_t>> out_edges(spec.node_count());
    for (std::size_t e = 0; e < spec.edges().size(); ++e)
        out_edges[spec.edges()[e].from].push_back(e);

    Rng rng(substream_seed(seed, "network"));
    std::vector<Element> coeff;
    for (auto v : order) {
        const auto& basis = known[v];
        bool any_nonzero = std::any_of(basis.begin(), basis.end(), [](const Packet& p) {
            return std::any_of(p.coding.begin(), p.coding.end(), [](Element x) { return x != 0; });
        });
        for (auto e : out_edges[v]) {
            Packet p;
            p.edge = e;
            while (true) {
                p.coding.assign(dim, 0);
                p.payload.assign(c, 0);
                coeff.resize(basis.size());
                for (auto& a : coeff)
                    a = static_cast<Element>(rng.uniform(f.order()));
                for (std::size_t j = 0; j < basis.size(); ++j) {
                    if (coeff[j] == 0)
                        continue;
                    for (std::size_t t = 0; t < dim; ++t)
                        p.coding[t] = f.add(p.coding[t], f.mul(coeff[j], basis[j].coding[t]));
                    for (std::size_t t = 0; t < c; ++t)
                        p.payload[t] = f.add(p.payload[t], f.mul(coeff[j], basis[j].payload[t]));
                }
                bool zero = std::all_of(p.coding.begin(), p.coding.end(), [](Element x) { return x == 0; });
                if (!zero || !any_nonzero || options.rule == CoefficientRule::uniform)
                    break;
            }
            const auto to = spec.edges()[e].to;
            run.states[to].received.push_back(p);
            known[to].push_back(p);
            run.log.push_back(std::move(p));
        }
    }
    return run;
}

bool packets_consistent(const RlncRun& run, const std::vector<CodewordMatrix>& codewords)
{
    if (codewords.empty())
        return run.log.empty();
    const Field& f = codewords.front().data.field();
    Matrix stacked(f, 0, codewords.front().data.cols());
    for (const auto& cw : codewords)
        stacked = vstack(stacked, cw.data);
    for (const auto& p : run.log) {
        if (p.coding.size() != stacked.rows())
            return false;
        for (std::size_t t = 0; t < stacked.cols(); ++t) {
            Element acc = 0;
            for (std::size_t r = 0; r < stacked.rows(); ++r)
                acc = f.add(acc, f.mul(p.coding[r], stacked(r, t)));
            if (acc != p.payload[t])
                return false;
        }
    }
    return true;
}

DecodeOutcome decode_at(const NodeState& state, const SourceLayout& layout)
{
    DecodeOutcome out;
    out.needed = layout.total;
    const std::size_t dim = layout.total;
    const std::size_t c = state.received.empty() ? 0 : state.received.front().payload.size();
    Matrix aug(state.field, 0, dim + c);
    std::vector<Element> row(dim + c);
    for (const auto& p : state.received) {
        std::copy(p.coding.begin(), p.coding.end(), row.begin());
        std::copy(p.payload.begin(), p.payload.end(), row.begin() + static_cast<long>(dim));
        aug.append_row(row);
    }
    auto [red, pivots] = rref(aug);
    out.rank = static_cast<std::size_t>(
        std::count_if(pivots.begin(), pivots.end(), [&](std::size_t p) { return p < dim; }));
    if (out.rank < dim || dim == 0)
        return out;
    std::vector<CodewordMatrix> result;
    for (std::size_t i = 0; i < layout.rows.size(); ++i) {
        Matrix x(state.field, layout.rows[i], c);
        for (std::size_t r = 0; r < layout.rows[i]; ++r)
            for (std::size_t t = 0; t < c; ++t)
                x(r, t) = red(layout.offset[i] + r, dim + t);
        result.push_back({i, std::move(x)});
    }
    out.codewords = std::move(result);
    return out;
}

std::size_t converse_bound(std::size_t rho_sd, std::size_t rho_sz, std::size_t w)
{
    const auto up = rho_sd + w;
    return up > rho_sz ? up - rho_sz : 0;
}

WiretapSets enumerate_wiretap_sets(std::size_t edge_count, std::size_t w, std::uint64_t cap,
                                   std::uint64_t seed)
{
    WiretapSets out;
    w = std::min(w, edge_count);
    std::uint64_t total = 0;
    for (std::size_t s = 1; s <= w; ++s) {
        auto b = binomial(edge_count, s);
        total = (total + b < total) ? std::numeric_limits<std::uint64_t>::max() : total + b;
    }
    if (total <= cap) {
        for (std::size_t s = 1; s <= w; ++s)
            for_each_combination(edge_count, s, [&](const std::vector<std::size_t>& idx) {
                out.sets.push_back(idx);
                return true;
            });
        return out;
    }
    out.exhaustive = false;
    Rng rng(substream_seed(seed, "adversary"));
    std::vector<std::size_t> all(edge_count);
    for (std::uint64_t t = 0; t < cap; ++t) {
        for (std::size_t i = 0; i < edge_count; ++i)
            all[i] = i;
        rng.shuffle(all);
        std::vector<std::size_t> set(all.begin(), all.begin() + static_cast<long>(w));
        std::sort(set.begin(), set.end());
        out.sets.push_back(std::move(set));
    }
    return out;
}

ConverseReport converse_bound(const NetworkSpec& spec, std::size_t source, std::size_t destination,
                              std::size_t w, std::size_t eve_links, std::uint64_t set_cap)
{
    ConverseReport rep;
    rep.rho_sd = min_cut(spec, {source}, destination);
    const auto n = spec.edges().size();
    eve_links = std::min(eve_links, n);
    auto record = [&](const std::vector<std::size_t>& set) {
        const auto rz = eve_min_cut(spec, {source}, set);
        rep.per_set.push_back({set, rz, converse_bound(rep.rho_sd, rz, w)});
        rep.worst_rho_sz = std::max(rep.worst_rho_sz, rz);
    };
    if (eve_links == 0) {
        record({});
    } else if (binomial(n, eve_links) <= set_cap) {
        for_each_combination(n, eve_links, [&](const std::vector<std::size_t>& idx) {
            record(idx);
            return true;
        });
    } else {
        rep.exhaustive = false;
        Rng rng(substream_seed(0, "converse"));
        std::vector<std::size_t> all(n);
        for (std::uint64_t t = 0; t < set_cap; ++t) {
            for (std::size_t i = 0; i < n; ++i)
                all[i] = i;
            rng.shuffle(all);
            std::vector<std::size_t> set(all.begin(), all.begin() + static_cast<long>(eve_links));
            std::sort(set.begin(), set.end());
            record(set);
        }
    }
    rep.bound = converse_bound(rep.rho_sd, rep.worst_rho_sz, w);
    return rep;
}

}  // namespace smsm

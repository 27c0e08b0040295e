#include "smsm/scenario.hpp"

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

namespace smsm {

std::string to_string(ScenarioKind k)
{
    switch (k) {
    case ScenarioKind::multicast:
        return "multicast";
    case ScenarioKind::gossip:
        return "gossip";
    case ScenarioKind::code_audit:
        return "code-audit";
    }
    return "?";
}

namespace {

struct Line {
    std::size_t number;
    std::string key;
    std::vector<std::string> args;
};

[[noreturn]] void fail(const Line& l, const std::string& msg)
{
    throw ParseError("line " + std::to_string(l.number) + " (" + l.key + "): " + msg);
}

std::uint64_t to_u64(const Line& l, const std::string& s)
{
    try {
        std::size_t pos = 0;
        if (!s.empty() && s[0] != '-') {
            auto v = std::stoull(s, &pos);
            if (pos == s.size())
                return v;
        }
    } catch (const std::exception&) {
    }
    fail(l, "expected a non-negative integer, got '" + s + "'");
}

double to_double(const Line& l, const std::string& s)
{
    try {
        std::size_t pos = 0;
        auto v = std::stod(s, &pos);
        if (pos == s.size())
            return v;
    } catch (const std::exception&) {
    }
    fail(l, "expected a number, got '" + s + "'");
}

void arity(const Line& l, std::size_t lo, std::size_t hi)
{
    if (l.args.size() < lo || l.args.size() > hi)
        fail(l, "wrong number of arguments");
}

}  // namespace

Scenario parse_scenario(std::istream& in, const std::string& base_dir)
{
    std::vector<Line> lines;
    std::string raw;
    std::size_t number = 0;
    bool header = false;
    while (std::getline(in, raw)) {
        ++number;
        if (auto h = raw.find('#'); h != std::string::npos)
            raw.erase(h);
        std::istringstream ls(raw);
        Line l{number, {}, {}};
        if (!(ls >> l.key))
            continue;
        for (std::string tok; ls >> tok;)
            l.args.push_back(tok);
        if (!header) {
            if (l.key != "smsm-scenario")
                throw ParseError("line " + std::to_string(number) + ": expected 'smsm-scenario 1' header");
            if (l.args.size() != 1 || l.args[0] != "1")
                throw ParseError("unsupported scenario version (this build reads version 1)");
            header = true;
            continue;
        }
        lines.push_back(std::move(l));
    }
    if (!header)
        throw ParseError("empty scenario: missing 'smsm-scenario 1' header");

    Scenario sc;
    bool have_kind = false;
    std::size_t payload = 1;
    std::vector<const Line*> topo;  // node / edge / source / destination, in file order
    std::vector<std::pair<std::size_t, std::size_t>> gossip_sources;
    for (const auto& l : lines) {
        const auto& k = l.key;
        if (k == "kind") {
            arity(l, 1, 1);
            const auto& v = l.args[0];
            if (v == "multicast")
                sc.kind = ScenarioKind::multicast;
            else if (v == "gossip")
                sc.kind = ScenarioKind::gossip;
            else if (v == "code-audit")
                sc.kind = ScenarioKind::code_audit;
            else
                fail(l, "unknown kind '" + v + "'");
            have_kind = true;
        } else if (k == "field") {
            arity(l, 1, 1);
            auto q = to_u64(l, l.args[0]);
            if (q > 65536 || !is_supported_field_order(static_cast<std::uint32_t>(q)))
                fail(l, "unsupported field order " + l.args[0]);
            sc.q = static_cast<std::uint32_t>(q);
        } else if (k == "payload") {
            arity(l, 1, 1);
            payload = to_u64(l, l.args[0]);
            if (payload == 0)
                fail(l, "payload must be >= 1");
        } else if (k == "seed") {
            arity(l, 1, 1);
            sc.seed = to_u64(l, l.args[0]);
        } else if (k == "wiretap") {
            arity(l, 1, 1);
            sc.w = to_u64(l, l.args[0]);
        } else if (k == "ks") {
            arity(l, 1, 1);
            sc.k_s = to_u64(l, l.args[0]);
        } else if (k == "k") {
            arity(l, 1, 1);
            sc.k = to_u64(l, l.args[0]);
        } else if (k == "wiretap_cap") {
            arity(l, 1, 1);
            sc.wiretap_cap = to_u64(l, l.args[0]);
        } else if (k == "enumeration_cap") {
            arity(l, 1, 1);
            sc.enumeration_cap = to_u64(l, l.args[0]);
        } else if (k == "trials") {
            arity(l, 1, 1);
            sc.trials = to_u64(l, l.args[0]);
        } else if (k == "flood_trials") {
            arity(l, 1, 1);
            sc.flood_trials = to_u64(l, l.args[0]);
        } else if (k == "capture") {
            arity(l, 1, 1);
            if (l.args[0] == "row_access")
                sc.capture = CaptureModel::row_access;
            else if (l.args[0] == "exact_functionals")
                sc.capture = CaptureModel::exact_functionals;
            else
                fail(l, "capture must be row_access or exact_functionals");
        } else if (k == "rule") {
            arity(l, 1, 1);
            if (l.args[0] == "uniform_nonzero")
                sc.rule = CoefficientRule::uniform_nonzero;
            else if (l.args[0] == "uniform")
                sc.rule = CoefficientRule::uniform;
            else
                fail(l, "rule must be uniform_nonzero or uniform");
        } else if (k == "code") {
            arity(l, 1, 3);
            const auto& v = l.args[0];
            if (v == "search") {
                arity(l, 1, 2);
                sc.code.kind = CodeSelection::Kind::search;
                if (l.args.size() == 2)
                    sc.code.budget = to_u64(l, l.args[1]);
            } else if (v == "file") {
                arity(l, 2, 2);
                sc.code.kind = CodeSelection::Kind::file;
                std::filesystem::path p(l.args[1]);
                sc.code.path = p.is_absolute() ? p.string() : (std::filesystem::path(base_dir) / p).string();
            } else if (v == "binning") {
                arity(l, 2, 3);
                sc.code.kind = CodeSelection::Kind::binning;
                sc.code.epsilon = to_double(l, l.args[1]);
                if (l.args.size() == 3) {
                    const auto& c = l.args[2];
                    if (c == "iid")
                        sc.code.construction = Construction::iid;
                    else if (c == "partition")
                        sc.code.construction = Construction::partition;
                    else if (c == "coset")
                        sc.code.construction = Construction::coset;
                    else
                        fail(l, "construction must be iid, partition or coset");
                }
            } else {
                fail(l, "code must be search, file or binning");
            }
        } else if (k == "nodes") {
            arity(l, 1, 1);
            sc.gossip.nodes = to_u64(l, l.args[0]);
        } else if (k == "exchange") {
            arity(l, 1, 1);
            try {
                sc.gossip.exchange = parse_exchange(l.args[0]);
            } catch (const std::invalid_argument& e) {
                fail(l, e.what());
            }
        } else if (k == "max_rounds") {
            arity(l, 1, 1);
            sc.gossip.max_rounds = to_u64(l, l.args[0]);
        } else if (k == "node") {
            arity(l, 1, 1);
            topo.push_back(&l);
        } else if (k == "edge") {
            arity(l, 2, 3);
            topo.push_back(&l);
        } else if (k == "source") {
            arity(l, 2, 2);
            topo.push_back(&l);
        } else if (k == "destination") {
            arity(l, 1, 1);
            topo.push_back(&l);
        } else {
            fail(l, "unknown key");
        }
    }
    if (!have_kind)
        throw ParseError("scenario has no 'kind' line");

    if (sc.kind == ScenarioKind::multicast) {
        NetworkSpec net{Field(sc.q), payload};
        auto node_of = [&](const std::string& name) {
            if (auto v = net.find_node(name))
                return *v;
            return net.add_node(name);
        };
        for (const auto* l : topo) {
            try {
                if (l->key == "node") {
                    if (net.find_node(l->args[0]))
                        fail(*l, "node declared twice");
                    net.add_node(l->args[0]);
                } else if (l->key == "edge") {
                    auto a = node_of(l->args[0]);
                    auto b = node_of(l->args[1]);
                    std::size_t mult = l->args.size() == 3 ? to_u64(*l, l->args[2]) : 1;
                    if (mult == 0)
                        fail(*l, "multiplicity must be >= 1");
                    net.add_link(a, b, mult);
                } else if (l->key == "source") {
                    net.add_source(node_of(l->args[0]), to_u64(*l, l->args[1]));
                } else {
                    net.add_destination(node_of(l->args[0]));
                }
            } catch (const std::invalid_argument& e) {
                fail(*l, e.what());
            }
        }
        if (!net.is_acyclic())
            throw UnsupportedTopology("network has a directed cycle; only acyclic networks are supported");
        sc.network = std::move(net);
    } else {
        for (const auto* l : topo) {
            if (l->key != "source" || sc.kind != ScenarioKind::gossip)
                fail(*l, "only valid in multicast scenarios");
            gossip_sources.emplace_back(to_u64(*l, l->args[0]), to_u64(*l, l->args[1]));
        }
        for (const auto& [node, k] : gossip_sources) {
            if (sc.k == 0)
                sc.k = k;
            else if (k != sc.k)
                throw std::invalid_argument("gossip sources must all carry the same k");
            sc.gossip.sources.push_back(node);
        }
        sc.gossip.q = sc.q;
        sc.gossip.k = sc.k;
        sc.gossip.payload = payload;
        sc.gossip.seed = sc.seed;
        sc.gossip.rule = sc.rule;
        if (sc.kind == ScenarioKind::gossip)
            sc.gossip.validate();
        if (sc.kind == ScenarioKind::code_audit && sc.code.kind != CodeSelection::Kind::file && sc.k == 0)
            throw std::invalid_argument("code-audit scenario needs 'k' unless the code comes from a file");
    }
    return sc;
}

Scenario load_scenario(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open scenario '" + path + "'");
    auto dir = std::filesystem::path(path).parent_path().string();
    return parse_scenario(in, dir.empty() ? "." : dir);
}

SourceCodec::SourceCodec(CosetCode code) : code_(std::move(code))
{
    encoder_ = make_encoder(std::get<CosetCode>(code_));
}

SourceCodec::SourceCodec(BinCodebook codebook) : code_(std::move(codebook))
{
    if (std::get<BinCodebook>(code_).mode() != BinMode::individual)
        throw std::invalid_argument("multicast sources need an individual-mode codebook");
    encoder_ = make_encoder(std::get<BinCodebook>(code_));
}

std::size_t SourceCodec::k() const { return encoder_->message_length(); }

Matrix SourceCodec::encode(const Matrix& messages) const
{
    if (auto* c = std::get_if<CosetCode>(&code_))
        return c->encode_matrix({0, messages}).data;
    const auto& cb = std::get<BinCodebook>(code_);
    if (messages.rows() != cb.k() || messages.field().order() != 2)
        throw std::invalid_argument("binning codec needs k x c binary messages");
    Matrix out(messages.field(), cb.n(), messages.cols());
    for (std::size_t col = 0; col < messages.cols(); ++col) {
        auto x = encode_individual(cb, messages.column(col));
        for (std::size_t r = 0; r < x.size(); ++r)
            out(r, col) = x[r];
    }
    return out;
}

std::optional<Matrix> SourceCodec::decode(const Matrix& codewords) const
{
    if (auto* c = std::get_if<CosetCode>(&code_))
        return c->decode_matrix({0, codewords}).data;
    const auto& cb = std::get<BinCodebook>(code_);
    Matrix out(codewords.field(), cb.k(), codewords.cols());
    for (std::size_t col = 0; col < codewords.cols(); ++col) {
        auto d = decode_individual(cb, codewords.column(col));
        if (d.status != DecodeStatus::unique)
            return std::nullopt;
        for (std::size_t r = 0; r < d.message.size(); ++r)
            out(r, col) = d.message[r];
    }
    return out;
}

std::string SourceCodec::describe() const
{
    std::ostringstream os;
    if (auto* c = std::get_if<CosetCode>(&code_))
        write_coset_code(os, *c);
    else
        write_codebook(os, std::get<BinCodebook>(code_));
    return os.str();
}

SourceCodec resolve_codec(const Scenario& sc, std::size_t k)
{
    const Field f(sc.q);
    switch (sc.code.kind) {
    case CodeSelection::Kind::file: {
        std::ifstream in(sc.code.path);
        if (!in)
            throw std::runtime_error("cannot open code file '" + sc.code.path + "'");
        auto code = read_coset_code(in);
        if (code.k() != k || code.w() != sc.w || !(code.field() == f))
            throw std::invalid_argument("code file has (q, k, w) = (" + std::to_string(code.field().order()) +
                                        ", " + std::to_string(code.k()) + ", " + std::to_string(code.w()) +
                                        "), scenario needs (" + std::to_string(sc.q) + ", " +
                                        std::to_string(k) + ", " + std::to_string(sc.w) + ")");
        return SourceCodec(std::move(code));
    }
    case CodeSelection::Kind::search: {
        auto res = search_code(k, sc.w, f, sc.code.budget, sc.seed);
        if (!res.code)
            throw std::runtime_error("no (k=" + std::to_string(k) + ", w=" + std::to_string(sc.w) + ") code over GF(" +
                                     std::to_string(sc.q) + ") found after " + std::to_string(res.tried) +
                                     (res.exhaustive ? " candidates (exhaustive)" : " random candidates"));
        return SourceCodec(std::move(*res.code));
    }
    case CodeSelection::Kind::binning: {
        if (sc.q != 2)
            throw std::invalid_argument("binning codes are binary: use field 2");
        if (sc.code.construction == Construction::coset) {
            auto res = search_code(k, sc.w, f, sc.code.budget, sc.seed);
            if (!res.code)
                throw std::runtime_error("no binary coset code found for the coset codebook");
            return SourceCodec(codebook_from_coset_code(*res.code));
        }
        return SourceCodec(generate_individual(k, sc.w, sc.code.epsilon, sc.seed, sc.code.construction));
    }
    }
    throw std::logic_error("unreachable");
}

}  // namespace smsm

#include "smsm/pipeline.hpp"

#include <algorithm>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

#include "smsm/parallel.hpp"
#include "smsm/rng.hpp"

namespace smsm {

std::uint64_t trial_seed(std::uint64_t seed, std::size_t trial)
{
    return trial == 0 ? seed : substream_seed(seed, "trial", trial);
}

std::size_t MulticastResult::decoded_trials() const
{
    return static_cast<std::size_t>(
        std::count_if(trials.begin(), trials.end(), [](const MulticastTrial& t) { return t.all_decoded; }));
}

bool MulticastResult::secure_protected() const
{
    return std::all_of(trials.begin(), trials.end(),
                       [](const MulticastTrial& t) { return t.leakage.secure_protected(); });
}

bool MulticastResult::secure_all() const
{
    return std::all_of(trials.begin(), trials.end(), [](const MulticastTrial& t) { return t.leakage.secure_all(); });
}

double MulticastResult::max_mi_protected() const
{
    double m = 0;
    for (const auto& t : trials)
        m = std::max(m, t.leakage.max_mi_protected());
    return m;
}

double MulticastResult::max_mi() const
{
    double m = 0;
    for (const auto& t : trials)
        m = std::max(m, t.leakage.max_mi());
    return m;
}

std::string MulticastResult::text(const NetworkSpec& spec) const
{
    std::ostringstream os;
    os << feasibility.text();
    for (std::size_t i = 0; i < codes.size(); ++i)
        os << "code for source " << spec.node_name(spec.sources()[i].node) << ":\n" << codes[i];
    os << "trials: " << trials.size() << ", all destinations decoded in " << decoded_trials() << '\n';
    std::size_t audited = 0;
    for (const auto& t : trials)
        audited += t.audited ? 1 : 0;
    os << std::fixed << std::setprecision(6);
    os << "audited trials: " << audited << '\n';
    os << "max MI over protected subsets: " << max_mi_protected() << " bits\n";
    os << "max MI over all subsets: " << max_mi() << " bits\n";
    os << "verdict, protected messages: " << (secure_protected() ? "SECURE" : "INSECURE") << '\n';
    os << "verdict, all messages individually: " << (secure_all() ? "SECURE" : "INSECURE") << '\n';
    if (!trials.empty())
        os << "trial 0 " << trials.front().leakage.text();
    return os.str();
}

void MulticastResult::write_decode_csv(std::ostream& out, const NetworkSpec& spec) const
{
    out << "trial,destination,rank,needed,correct\n";
    for (const auto& t : trials)
        for (const auto& d : t.decodes)
            out << t.index << ',' << spec.node_name(d.destination) << ',' << d.rank << ',' << d.needed << ','
                << (d.correct ? 1 : 0) << '\n';
}

void MulticastResult::write_packet_csv(std::ostream& out, const NetworkSpec& spec) const
{
    out << "edge,coding,payload\n";
    for (const auto& p : first_run.log) {
        out << spec.edge_label(p.edge) << ',';
        for (std::size_t i = 0; i < p.coding.size(); ++i)
            out << (i ? " " : "") << p.coding[i];
        out << ',';
        for (std::size_t i = 0; i < p.payload.size(); ++i)
            out << (i ? " " : "") << p.payload[i];
        out << '\n';
    }
}

MulticastResult run_multicast(const Scenario& sc, const MulticastOptions& options)
{
    if (sc.kind != ScenarioKind::multicast || !sc.network)
        throw std::invalid_argument("run_multicast needs a multicast scenario");
    const NetworkSpec& spec = *sc.network;
    MulticastResult res;
    res.feasibility = feasibility_check(spec, sc.w);
    if (!res.feasibility.individual_feasible && !options.force) {
        auto v = res.feasibility.first_violation();
        std::string why = v ? v->name + " violated for " + v->subject + " (required " + std::to_string(v->required) +
                                  ", actual " + std::to_string(v->actual) + ")"
                            : std::string("no sources or destinations");
        throw Infeasible("scenario is infeasible: " + why + "; use --force to run anyway");
    }

    std::map<std::size_t, SourceCodec> by_k;
    std::vector<const SourceCodec*> codecs;
    for (const auto& s : spec.sources()) {
        auto it = by_k.find(s.k);
        if (it == by_k.end())
            it = by_k.emplace(s.k, resolve_codec(sc, s.k)).first;
        codecs.push_back(&it->second);
    }
    std::vector<EncoderPtr> encoders;
    for (const auto* c : codecs) {
        encoders.push_back(c->encoder());
        res.codes.push_back(c->describe());
    }

    const Field f(sc.q);
    const std::size_t c = spec.payload_length();
    AuditOptions audit;
    audit.w = sc.w;
    audit.k_s = sc.k_s;
    audit.capture = sc.capture;
    audit.wiretap_cap = sc.wiretap_cap;
    audit.enumeration_cap = sc.enumeration_cap;
    audit.seed = sc.seed;
    audit.cache = options.cache;
    MiCache local_cache;
    if (!audit.cache)
        audit.cache = &local_cache;

    res.trials.resize(options.trials);
    std::vector<RlncRun> first(1);
    parallel_for(options.trials, options.threads, [&](std::size_t t) {
        auto& trial = res.trials[t];
        trial.index = t;
        trial.seed = trial_seed(sc.seed, t);
        Rng msg(substream_seed(trial.seed, "messages"));
        std::vector<Matrix> messages;
        std::vector<CodewordMatrix> codewords;
        for (std::size_t i = 0; i < spec.sources().size(); ++i) {
            Matrix m(f, spec.sources()[i].k, c);
            for (std::size_t r = 0; r < m.rows(); ++r)
                for (std::size_t col = 0; col < c; ++col)
                    m(r, col) = static_cast<Element>(msg.uniform(f.order()));
            codewords.push_back({i, codecs[i]->encode(m)});
            messages.push_back(std::move(m));
        }
        auto run = rlnc_run(spec, codewords, trial.seed, RlncOptions{sc.rule});
        trial.all_decoded = !spec.destinations().empty();
        for (auto d : spec.destinations()) {
            auto out = decode_at(run.states[d], run.layout);
            DestinationDecode dd{d, out.rank, out.needed, false};
            if (out.codewords) {
                dd.correct = true;
                for (std::size_t i = 0; i < messages.size(); ++i) {
                    auto m = codecs[i]->decode((*out.codewords)[i].data);
                    if (!m || !(*m == messages[i]))
                        dd.correct = false;
                }
            }
            trial.all_decoded = trial.all_decoded && dd.correct;
            trial.decodes.push_back(dd);
        }
        if (options.audit && (t == 0 || !options.audit_first_only)) {
            trial.leakage = individual_security_audit(spec, run, encoders, audit);
            trial.audited = true;
        } else {
            trial.leakage.k_s = sc.k_s;
        }
        if (t == 0)
            first[0] = std::move(run);
    });
    res.first_run = std::move(first[0]);
    return res;
}

}  // namespace smsm

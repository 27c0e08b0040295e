#include "smsm/adversary.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <set>
#include <sstream>

#include "smsm/combinatorics.hpp"
#include "smsm/parallel.hpp"
#include "smsm/rng.hpp"

namespace smsm {

namespace {

std::string matrix_digest(const Matrix& m)
{
    std::ostringstream os;
    os << m.field().order() << ':' << m.rows() << 'x' << m.cols() << ':';
    for (auto v : m.entries())
        os << v << ',';
    return os.str();
}

class CosetEncoder final : public ColumnEncoder {
public:
    explicit CosetEncoder(const CosetCode& code)
        : field_(code.field()),
          k_(code.k()),
          w_(code.w()),
          stacked_(code.stacked()),
          name_("coset q=" + std::to_string(code.field().order()) + " k=" + std::to_string(code.k()) +
                " w=" + std::to_string(code.w()) + " G=" + matrix_digest(code.generator()) +
                " Gstar=" + matrix_digest(code.complement()))
    {
    }
    std::string name() const override { return name_; }
    const Field& field() const override { return field_; }
    std::size_t message_length() const override { return k_; }
    std::size_t codeword_length() const override { return k_; }
    std::size_t protected_count() const override { return k_ - w_; }
    void encode(std::span<const Element> m, std::uint64_t, std::vector<Element>& x) const override
    {
        // x_j = sum_i m_i * stacked(i, j)
        x.assign(k_, 0);
        for (std::size_t i = 0; i < k_; ++i) {
            if (m[i] == 0)
                continue;
            for (std::size_t j = 0; j < k_; ++j)
                x[j] = field_.add(x[j], field_.mul(m[i], stacked_(i, j)));
        }
    }

private:
    Field field_;
    std::size_t k_, w_;
    Matrix stacked_;
    std::string name_;
};

std::string codebook_digest(const BinCodebook& cb)
{
    std::uint64_t h = 0xCBF29CE484222325ull;
    for (auto s : cb.slots())
        h = splitmix64(h ^ s);
    std::ostringstream os;
    os << "binning " << to_string(cb.mode()) << ' ' << to_string(cb.construction()) << " k=" << cb.k()
       << " w=" << cb.w() << " n=" << cb.n() << " delta=" << cb.delta() << " digest=" << std::hex << h;
    return os.str();
}

class BinEncoder final : public ColumnEncoder {
public:
    explicit BinEncoder(const BinCodebook& cb) : cb_(cb), field_(2), name_(codebook_digest(cb)) {}
    std::string name() const override { return name_; }
    const Field& field() const override { return field_; }
    std::size_t message_length() const override { return cb_.k(); }
    std::size_t codeword_length() const override { return cb_.n(); }
    std::uint64_t randomness_count() const override
    {
        return cb_.mode() == BinMode::strong ? cb_.delta() : 1;
    }
    std::size_t protected_count() const override
    {
        return cb_.mode() == BinMode::strong ? cb_.k() : cb_.k() - cb_.w();
    }
    void encode(std::span<const Element> m, std::uint64_t r, std::vector<Element>& x) const override
    {
        x = cb_.mode() == BinMode::strong ? encode_strong(cb_, m, r) : encode_individual(cb_, m);
    }

private:
    BinCodebook cb_;
    Field field_;
    std::string name_;
};

class ProductEncoder final : public ColumnEncoder {
public:
    explicit ProductEncoder(std::vector<EncoderPtr> parts) : parts_(std::move(parts)), field_(2)
    {
        if (parts_.empty())
            throw std::invalid_argument("product encoder needs at least one part");
        field_ = parts_.front()->field();
        name_ = "product(";
        for (const auto& p : parts_) {
            if (!(p->field() == field_))
                throw std::invalid_argument("product encoder parts must share a field");
            k_ += p->message_length();
            n_ += p->codeword_length();
            const auto rc = p->randomness_count();
            if (rc != 0 && r_ > std::numeric_limits<std::uint64_t>::max() / rc)
                throw EnumerationInfeasible("product randomness space too large");
            r_ *= rc;
            name_ += p->name() + ";";
        }
        name_ += ")";
    }
    std::string name() const override { return name_; }
    const Field& field() const override { return field_; }
    std::size_t message_length() const override { return k_; }
    std::size_t codeword_length() const override { return n_; }
    std::uint64_t randomness_count() const override { return r_; }
    // Protected messages are not contiguous in a product; callers pick J explicitly.
    std::size_t protected_count() const override { return 0; }
    void encode(std::span<const Element> m, std::uint64_t r, std::vector<Element>& x) const override
    {
        x.clear();
        std::vector<Element> part;
        std::size_t off = 0;
        for (const auto& p : parts_) {
            const auto rc = p->randomness_count();
            p->encode(m.subspan(off, p->message_length()), r % rc, part);
            r /= rc;
            off += p->message_length();
            x.insert(x.end(), part.begin(), part.end());
        }
    }

private:
    std::vector<EncoderPtr> parts_;
    Field field_;
    std::string name_;
    std::size_t k_ = 0, n_ = 0;
    std::uint64_t r_ = 1;
};

}  // namespace

EncoderPtr make_encoder(const CosetCode& code) { return std::make_shared<CosetEncoder>(code); }
EncoderPtr make_encoder(const BinCodebook& codebook) { return std::make_shared<BinEncoder>(codebook); }
EncoderPtr make_product_encoder(std::vector<EncoderPtr> parts)
{
    return std::make_shared<ProductEncoder>(std::move(parts));
}

MutualInformation exact_mutual_information(const ColumnEncoder& encoder, const Matrix& functionals,
                                           std::span<const std::size_t> subset, std::uint64_t cap)
{
    const Field& f = encoder.field();
    const std::uint64_t q = f.order();
    const std::size_t k = encoder.message_length();
    const std::size_t n = encoder.codeword_length();
    if (!(functionals.field() == f) || functionals.cols() != n)
        throw std::invalid_argument("functionals must be (rows x n) over the encoder field");
    for (auto j : subset)
        if (j >= k)
            throw std::invalid_argument("message subset index out of range");
    const std::uint64_t messages = saturating_pow(q, k);
    const std::uint64_t rc = encoder.randomness_count();
    const std::uint64_t total =
        messages > cap ? std::numeric_limits<std::uint64_t>::max() : messages * rc;
    if (messages > cap || rc > cap || total > cap)
        throw EnumerationInfeasible("enumeration of " + std::to_string(q) + "^" + std::to_string(k) +
                                    " messages x " + std::to_string(rc) +
                                    " randomness values exceeds the cap of " + std::to_string(cap));

    MutualInformation out;
    out.outcomes = total;
    if (functionals.rows() == 0 || subset.empty())
        return out;
    if (std::log2(static_cast<double>(q)) * static_cast<double>(functionals.rows()) > 63.5)
        throw EnumerationInfeasible("observation alphabet does not fit in 64 bits");

    const std::uint64_t a_size = saturating_pow(q, subset.size());
    std::vector<std::uint64_t> na(a_size, 0);
    std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;  // (z, a)
    pairs.reserve(total);

    std::vector<std::uint32_t> digits(k);
    std::vector<Element> m(k), x;
    for (std::uint64_t idx = 0; idx < messages; ++idx) {
        index_to_digits(idx, q, digits);
        std::copy(digits.begin(), digits.end(), m.begin());
        std::uint64_t a = 0;
        for (auto j : subset)
            a = a * q + m[j];
        for (std::uint64_t r = 0; r < rc; ++r) {
            encoder.encode(m, r, x);
            std::uint64_t z = 0;
            for (std::size_t i = 0; i < functionals.rows(); ++i) {
                Element acc = 0;
                for (std::size_t t = 0; t < n; ++t) {
                    const auto c = functionals(i, t);
                    if (c != 0 && x[t] != 0)
                        acc = f.add(acc, f.mul(c, x[t]));
                }
                z = z * q + acc;
            }
            ++na[a];
            pairs.emplace_back(z, a);
        }
    }
    std::sort(pairs.begin(), pairs.end());

    using i128 = __int128;
    const i128 T = static_cast<i128>(total);
    std::uint64_t distinct_a = 0;
    for (auto c : na)
        if (c)
            ++distinct_a;
    std::uint64_t distinct_z = 0, distinct_pairs = 0;
    bool products_match = true;
    double mi = 0;
    std::size_t i = 0;
    while (i < pairs.size()) {
        std::size_t zend = i;
        while (zend < pairs.size() && pairs[zend].first == pairs[i].first)
            ++zend;
        const std::uint64_t nz = zend - i;
        ++distinct_z;
        std::size_t p = i;
        while (p < zend) {
            std::size_t q_end = p;
            while (q_end < zend && pairs[q_end].second == pairs[p].second)
                ++q_end;
            const std::uint64_t naz = q_end - p;
            const std::uint64_t nav = na[pairs[p].second];
            ++distinct_pairs;
            if (static_cast<i128>(naz) * T != static_cast<i128>(nav) * static_cast<i128>(nz))
                products_match = false;
            mi += static_cast<double>(naz) / static_cast<double>(total) *
                  std::log2(static_cast<double>(naz) * static_cast<double>(total) /
                            (static_cast<double>(nav) * static_cast<double>(nz)));
            p = q_end;
        }
        i = zend;
    }
    out.exact_zero = products_match && distinct_pairs == distinct_a * distinct_z;
    out.bits = out.exact_zero ? 0.0 : std::max(0.0, mi);
    return out;
}

WiretapObservation canonicalize(const Field& field, std::size_t dimension, std::size_t payload_length,
                                std::span<const Packet> packets)
{
    WiretapObservation obs{ {}, packets.size(), 0, Matrix(field, 0, dimension),
                            Matrix(field, 0, payload_length), {} };
    Matrix aug(field, 0, dimension + payload_length);
    std::vector<Element> row(dimension + payload_length);
    for (const auto& p : packets) {
        if (p.coding.size() != dimension || p.payload.size() != payload_length)
            throw std::invalid_argument("canonicalize: packet shape mismatch");
        obs.edges.push_back(p.edge);
        std::copy(p.coding.begin(), p.coding.end(), row.begin());
        std::copy(p.payload.begin(), p.payload.end(), row.begin() + static_cast<long>(dimension));
        aug.append_row(row);
    }
    std::sort(obs.edges.begin(), obs.edges.end());
    obs.edges.erase(std::unique(obs.edges.begin(), obs.edges.end()), obs.edges.end());
    auto ech = rref(aug);
    for (std::size_t r = 0; r < ech.pivots.size(); ++r) {
        if (ech.pivots[r] >= dimension)
            break;  // a zero coding vector with a nonzero payload: not a linear capture
        auto full = ech.reduced.row(r);
        obs.functionals.append_row(full.subspan(0, dimension));
        obs.values.append_row(full.subspan(dimension));
        obs.pivots.push_back(ech.pivots[r]);
    }
    obs.discarded = packets.size() - obs.rank();
    return obs;
}

std::string to_string(CaptureModel m)
{
    return m == CaptureModel::row_access ? "row_access" : "exact_functionals";
}

Matrix project_functionals(const WiretapObservation& obs, const SourceLayout& layout, std::size_t source,
                           CaptureModel model)
{
    const auto off = layout.offset.at(source);
    const auto rows = layout.rows.at(source);
    const Field& f = obs.functionals.field();
    std::vector<std::size_t> cols(rows);
    for (std::size_t i = 0; i < rows; ++i)
        cols[i] = off + i;
    auto ech = rref(obs.functionals.select_columns(cols));
    Matrix out(f, 0, rows);
    for (std::size_t r = 0; r < ech.pivots.size(); ++r) {
        if (model == CaptureModel::exact_functionals) {
            out.append_row(ech.reduced.row(r));
        } else {
            std::vector<Element> e(rows, 0);
            e[ech.pivots[r]] = 1;
            out.append_row(e);
        }
    }
    return out;
}

MutualInformation MiCache::get(const ColumnEncoder& encoder, const Matrix& functionals,
                               std::span<const std::size_t> subset, std::uint64_t cap)
{
    std::string key = encoder.name() + "|" + matrix_digest(functionals) + "|";
    for (auto j : subset)
        key += std::to_string(j) + ",";
    {
        std::lock_guard lock(mutex_);
        auto it = memo_.find(key);
        if (it != memo_.end())
            return it->second;
    }
    auto mi = exact_mutual_information(encoder, functionals, subset, cap);
    std::lock_guard lock(mutex_);
    memo_.emplace(key, mi);
    return mi;
}

std::size_t MiCache::size() const
{
    std::lock_guard lock(mutex_);
    return memo_.size();
}

double LeakageReport::max_mi() const
{
    double m = 0;
    for (const auto& e : entries)
        if (e.subset.size() <= k_s)
            m = std::max(m, e.mi.bits);
    return m;
}

double LeakageReport::max_mi_protected() const
{
    double m = 0;
    for (const auto& e : entries)
        if (e.subset.size() <= k_s && e.protected_subset)
            m = std::max(m, e.mi.bits);
    return m;
}

bool LeakageReport::secure_protected() const { return witness() == nullptr; }

bool LeakageReport::secure_all() const
{
    return std::all_of(entries.begin(), entries.end(), [&](const LeakageEntry& e) {
        return e.subset.size() > k_s || e.mi.exact_zero;
    });
}

const LeakageEntry* LeakageReport::witness() const
{
    for (const auto& e : entries)
        if (e.subset.size() <= k_s && e.protected_subset && !e.mi.exact_zero)
            return &e;
    return nullptr;
}

namespace {

std::string subset_string(const std::vector<std::size_t>& s)
{
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i)
        out += (i ? "," : "") + std::to_string(s[i]);
    return out + "}";
}

std::string fmt_bits(double b)
{
    std::ostringstream os;
    os << std::fixed << std::setprecision(6) << b;
    return os.str();
}

}  // namespace

std::string LeakageReport::text() const
{
    std::ostringstream os;
    os << "leakage report\n";
    os << "  encoder: " << encoder << '\n';
    os << "  capture model: " << capture << '\n';
    os << "  w = " << w << ", k_s = " << k_s << '\n';
    os << "  wiretap sets audited: " << wiretap_sets << (exhaustive ? " (exhaustive)" : " (sampled)")
       << '\n';
    os << "  oracle entries: " << entries.size() << '\n';
    os << "  max MI, protected subsets: " << fmt_bits(max_mi_protected()) << " bits\n";
    os << "  max MI, all subsets |J| <= k_s: " << fmt_bits(max_mi()) << " bits\n";
    double joint = 0;
    bool has_joint = false;
    for (const auto& e : entries)
        if (e.joint) {
            joint = std::max(joint, e.mi.bits);
            has_joint = true;
        }
    if (has_joint)
        os << "  max joint MI I(M_s; Z): " << fmt_bits(joint) << " bits\n";
    os << "  verdict, protected messages: " << (secure_protected() ? "SECURE" : "INSECURE") << '\n';
    os << "  verdict, all messages individually: " << (secure_all() ? "SECURE" : "INSECURE") << '\n';
    if (auto* wv = witness())
        os << "  witness: wiretap " << wv->wiretap << ", source " << wv->source << ", J "
           << subset_string(wv->subset) << ", " << fmt_bits(wv->mi.bits) << " bits\n";
    return os.str();
}

void LeakageReport::write_csv(std::ostream& out) const
{
    out << "wiretap,source,subset,protected,joint,rank,exact_zero,mi_bits\n";
    for (const auto& e : entries) {
        std::string subset;
        for (std::size_t i = 0; i < e.subset.size(); ++i)
            subset += (i ? " " : "") + std::to_string(e.subset[i]);
        out << '"' << e.wiretap << "\"," << e.source << ",\"" << subset << "\","
            << (e.protected_subset ? 1 : 0) << ',' << (e.joint ? 1 : 0) << ',' << e.rank << ','
            << (e.mi.exact_zero ? 1 : 0) << ',' << fmt_bits(e.mi.bits) << '\n';
    }
}

namespace {

std::vector<std::vector<std::size_t>> audit_subsets(std::size_t k, std::size_t k_s, bool joint)
{
    std::vector<std::vector<std::size_t>> out;
    for (std::size_t s = 1; s <= std::min(k, k_s); ++s)
        for_each_combination(k, s, [&](const std::vector<std::size_t>& idx) {
            out.push_back(idx);
            return true;
        });
    if (joint && k_s < k && k > 0) {
        std::vector<std::size_t> all(k);
        for (std::size_t i = 0; i < k; ++i)
            all[i] = i;
        out.push_back(all);
    }
    return out;
}

MutualInformation oracle(const AuditOptions& opt, const ColumnEncoder& enc, const Matrix& f,
                         std::span<const std::size_t> subset)
{
    if (opt.cache)
        return opt.cache->get(enc, f, subset, opt.enumeration_cap);
    return exact_mutual_information(enc, f, subset, opt.enumeration_cap);
}

}  // namespace

std::vector<LeakageEntry> audit_capture(const WiretapObservation& obs, const SourceLayout& layout,
                                        const std::vector<EncoderPtr>& encoders,
                                        const AuditOptions& options, const std::string& label)
{
    if (encoders.size() != layout.rows.size())
        throw std::invalid_argument("audit: one encoder per source required");
    std::vector<LeakageEntry> out;
    for (std::size_t s = 0; s < encoders.size(); ++s) {
        const auto& enc = *encoders[s];
        if (enc.codeword_length() != layout.rows[s])
            throw std::invalid_argument("audit: encoder codeword length != source rows");
        Matrix f = project_functionals(obs, layout, s, options.capture);
        const std::size_t k = enc.message_length();
        for (const auto& subset : audit_subsets(k, options.k_s, options.include_joint)) {
            LeakageEntry e;
            e.wiretap = label;
            e.source = s;
            e.subset = subset;
            e.protected_subset = subset.back() < enc.protected_count();
            e.joint = subset.size() == k;
            e.rank = f.rows();
            e.mi = oracle(options, enc, f, subset);
            out.push_back(std::move(e));
        }
    }
    return out;
}

LeakageReport individual_security_audit(const NetworkSpec& spec, const RlncRun& run,
                                        const std::vector<EncoderPtr>& encoders,
                                        const AuditOptions& options)
{
    LeakageReport rep;
    for (std::size_t i = 0; i < encoders.size(); ++i)
        rep.encoder += (i ? "; " : "") + encoders[i]->name();
    rep.capture = to_string(options.capture);
    rep.w = options.w;
    rep.k_s = options.k_s;
    if (options.w == 0 || spec.edges().empty())
        return rep;

    std::vector<std::vector<std::size_t>> by_edge(spec.edges().size());
    for (std::size_t i = 0; i < run.log.size(); ++i)
        by_edge.at(run.log[i].edge).push_back(i);

    auto sets = enumerate_wiretap_sets(spec.edges().size(), options.w, options.wiretap_cap, options.seed);
    rep.exhaustive = sets.exhaustive;
    rep.wiretap_sets = sets.sets.size();
    std::vector<std::vector<LeakageEntry>> results(sets.sets.size());
    parallel_for(sets.sets.size(), options.threads, [&](std::size_t idx) {
        const auto& set = sets.sets[idx];
        std::vector<Packet> captured;
        std::string label;
        for (auto e : set) {
            for (auto p : by_edge[e])
                captured.push_back(run.log[p]);
            label += (label.empty() ? "" : " ") + spec.edge_label(e);
        }
        auto obs = canonicalize(spec.field(), run.layout.total, spec.payload_length(), captured);
        results[idx] = audit_capture(obs, run.layout, encoders, options, label);
    });
    for (auto& r : results)
        for (auto& e : r)
            rep.entries.push_back(std::move(e));
    return rep;
}

Matrix coordinate_functionals(const Field& field, std::size_t n, std::span<const std::size_t> positions)
{
    Matrix f(field, 0, n);
    std::vector<Element> e(n);
    for (auto p : positions) {
        if (p >= n)
            throw std::invalid_argument("coordinate position out of range");
        std::fill(e.begin(), e.end(), 0);
        e[p] = 1;
        f.append_row(e);
    }
    return f;
}

namespace {

std::vector<std::vector<std::size_t>> position_sets(std::size_t n, std::size_t w, std::uint64_t cap,
                                                    std::uint64_t seed, bool& exhaustive)
{
    std::vector<std::vector<std::size_t>> out;
    w = std::min(w, n);
    exhaustive = binomial(n, w) <= cap;
    if (exhaustive) {
        for_each_combination(n, w, [&](const std::vector<std::size_t>& idx) {
            out.push_back(idx);
            return true;
        });
        return out;
    }
    Rng rng(substream_seed(seed, "adversary"));
    std::vector<std::size_t> all(n);
    for (std::uint64_t t = 0; t < cap; ++t) {
        for (std::size_t i = 0; i < n; ++i)
            all[i] = i;
        rng.shuffle(all);
        std::vector<std::size_t> s(all.begin(), all.begin() + static_cast<long>(w));
        std::sort(s.begin(), s.end());
        out.push_back(std::move(s));
    }
    return out;
}

}  // namespace

LeakageReport coordinate_audit(const EncoderPtr& encoder, const AuditOptions& options)
{
    LeakageReport rep;
    rep.encoder = encoder->name();
    rep.capture = "coordinates";
    rep.w = options.w;
    rep.k_s = options.k_s;
    if (options.w == 0)
        return rep;
    bool exhaustive = true;
    auto sets = position_sets(encoder->codeword_length(), options.w, options.wiretap_cap, options.seed,
                              exhaustive);
    rep.exhaustive = exhaustive;
    rep.wiretap_sets = sets.size();
    SourceLayout layout{{0}, {encoder->codeword_length()}, encoder->codeword_length()};
    std::vector<std::vector<LeakageEntry>> results(sets.size());
    parallel_for(sets.size(), options.threads, [&](std::size_t idx) {
        WiretapObservation obs;
        obs.functionals = coordinate_functionals(encoder->field(), encoder->codeword_length(), sets[idx]);
        std::string label = "x" + subset_string(sets[idx]);
        AuditOptions opt = options;
        opt.capture = CaptureModel::exact_functionals;
        results[idx] = audit_capture(obs, layout, {encoder}, opt, label);
    });
    for (auto& r : results)
        for (auto& e : r)
            rep.entries.push_back(std::move(e));
    return rep;
}

StrongAuditResult strong_security_audit(const BinCodebook& codebook, std::size_t w, std::size_t trials,
                                        std::uint64_t seed, std::uint64_t cap)
{
    if (codebook.mode() != BinMode::strong)
        throw std::invalid_argument("strong_security_audit needs a strong-mode codebook");
    StrongAuditResult res;
    res.n = codebook.n();
    res.w = w;
    res.decodable = codebook.bins_disjoint();
    auto enc = make_encoder(codebook);
    std::vector<std::size_t> all(codebook.k());
    for (std::size_t i = 0; i < all.size(); ++i)
        all[i] = i;
    if (w == 0) {
        res.position_sets = 1;
        res.any_exact_zero = res.all_exact_zero = true;
        res.per_set.push_back({{}, MutualInformation{}});
        return res;
    }
    bool exhaustive = true;
    auto sets = position_sets(codebook.n(), w, trials, seed, exhaustive);
    res.exhaustive = exhaustive;
    res.position_sets = sets.size();
    res.all_exact_zero = true;
    double sum = 0;
    for (const auto& s : sets) {
        auto mi = exact_mutual_information(*enc, coordinate_functionals(Field(2), codebook.n(), s), all, cap);
        res.worst_mi = std::max(res.worst_mi, mi.bits);
        sum += mi.bits;
        res.any_exact_zero = res.any_exact_zero || mi.exact_zero;
        res.all_exact_zero = res.all_exact_zero && mi.exact_zero;
        res.per_set.emplace_back(s, mi);
    }
    res.mean_mi = sets.empty() ? 0 : sum / static_cast<double>(sets.size());
    return res;
}

std::uint64_t coset_consistency_count(const CosetCode& code, const Matrix& functionals,
                                      std::span<const Element> values, std::uint64_t cap)
{
    const Field& f = code.field();
    const std::uint64_t q = f.order();
    const std::size_t k = code.k();
    if (functionals.cols() != k || values.size() != functionals.rows())
        throw std::invalid_argument("coset_consistency_count: shape mismatch");
    const std::uint64_t words = saturating_pow(q, k);
    if (words > cap)
        throw EnumerationInfeasible("q^k words exceed the enumeration cap");
    std::set<std::vector<Element>> syndromes;
    std::vector<std::uint32_t> digits(k);
    std::vector<Element> x(k);
    for (std::uint64_t idx = 0; idx < words; ++idx) {
        index_to_digits(idx, q, digits);
        std::copy(digits.begin(), digits.end(), x.begin());
        if (multiply(functionals, x) == std::vector<Element>(values.begin(), values.end()))
            syndromes.insert(code.syndrome(x));
    }
    return syndromes.size();
}

}  // namespace smsm

#include "smsm/binning_code.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "smsm/rng.hpp"

namespace smsm {

std::string to_string(BinMode m) { return m == BinMode::individual ? "individual" : "strong"; }

std::string to_string(Construction c)
{
    switch (c) {
    case Construction::iid:
        return "iid";
    case Construction::partition:
        return "partition";
    case Construction::coset:
        return "coset";
    }
    return "?";
}

std::uint64_t delta_for(std::size_t w, std::size_t n, double epsilon)
{
    if (!(epsilon >= 0) || !std::isfinite(epsilon))
        throw std::invalid_argument("epsilon must be a finite value >= 0");
    const double x = static_cast<double>(n) * epsilon;
    const double r = std::round(x);
    const double extra = std::abs(x - r) < 1e-9 ? r : std::ceil(x);
    const double exponent = static_cast<double>(w) + extra;
    if (exponent > 62)
        throw ResourceLimit("Delta = 2^" + std::to_string(static_cast<long long>(exponent)) +
                            " is too large");
    return std::uint64_t{1} << static_cast<unsigned>(exponent);
}

BinCodebook::BinCodebook(BinMode mode, Construction construction, std::size_t k, std::size_t w,
                         std::size_t n, double epsilon, std::uint64_t seed, std::uint64_t delta,
                         std::vector<std::uint64_t> slots)
    : mode_(mode),
      construction_(construction),
      k_(k),
      w_(w),
      n_(n),
      epsilon_(epsilon),
      seed_(seed),
      delta_(delta),
      bin_count_(0),
      slots_(std::move(slots))
{
    if (n_ == 0 || n_ > 63)
        throw std::invalid_argument("codeword length must be in [1, 63]");
    if (mode_ == BinMode::individual) {
        if (w_ >= k_ || n_ != k_)
            throw std::invalid_argument("individual mode needs w < k and n = k");
        bin_count_ = std::uint64_t{1} << (k_ - w_);
    } else {
        if (k_ == 0 || w_ == 0 || n_ < k_ + w_)
            throw std::invalid_argument("strong mode needs k >= 1, w >= 1, n >= k + w");
        bin_count_ = std::uint64_t{1} << k_;
    }
    if (delta_ < (std::uint64_t{1} << w_) || (delta_ & (delta_ - 1)) != 0)
        throw std::invalid_argument("Delta must be a power of two >= 2^w");
    if (slots_.size() != bin_count_ * delta_)
        throw std::invalid_argument("slot count != bins * Delta");
    const std::uint64_t mask = (std::uint64_t{1} << n_) - 1;
    for (auto s : slots_)
        if (s & ~mask)
            throw std::invalid_argument("codeword wider than n bits");
    index_.reserve(slots_.size());
    for (std::uint64_t i = 0; i < slots_.size(); ++i)
        index_.emplace_back(slots_[i], i);
    std::sort(index_.begin(), index_.end());
}

double BinCodebook::expected_shell_count() const
{
    return static_cast<double>(delta_) / std::ldexp(1.0, static_cast<int>(w_));
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> BinCodebook::lookup(std::uint64_t word) const
{
    std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
    auto it = std::lower_bound(index_.begin(), index_.end(), std::make_pair(word, std::uint64_t{0}));
    for (; it != index_.end() && it->first == word; ++it)
        out.emplace_back(it->second / delta_, it->second % delta_);
    return out;
}

bool BinCodebook::bins_disjoint() const
{
    for (std::size_t i = 1; i < index_.size(); ++i)
        if (index_[i].first == index_[i - 1].first &&
            index_[i].second / delta_ != index_[i - 1].second / delta_)
            return false;
    return true;
}

bool BinCodebook::injective() const
{
    for (std::size_t i = 1; i < index_.size(); ++i)
        if (index_[i].first == index_[i - 1].first)
            return false;
    return true;
}

bool operator==(const BinCodebook& a, const BinCodebook& b)
{
    return a.mode_ == b.mode_ && a.construction_ == b.construction_ && a.k_ == b.k_ &&
           a.w_ == b.w_ && a.n_ == b.n_ && a.epsilon_ == b.epsilon_ && a.seed_ == b.seed_ &&
           a.delta_ == b.delta_ && a.slots_ == b.slots_;
}

namespace {

void check_cells(std::uint64_t bins, std::uint64_t delta, std::size_t n, std::uint64_t cap)
{
    unsigned __int128 cells = static_cast<unsigned __int128>(bins) * delta * n;
    if (cells > cap)
        throw ResourceLimit("codebook needs " + std::to_string(static_cast<double>(cells)) +
                            " cells, cap is " + std::to_string(cap));
}

std::uint64_t random_word(Rng& rng, std::size_t n)
{
    return rng.next() & ((std::uint64_t{1} << n) - 1);
}

std::uint64_t bits_to_index(std::span<const Element> bits)
{
    std::uint64_t v = 0;
    for (auto b : bits) {
        if (b > 1)
            throw std::invalid_argument("message entries must be bits");
        v = (v << 1) | b;
    }
    return v;
}

std::vector<Element> index_to_bits(std::uint64_t v, std::size_t len)
{
    std::vector<Element> out(len);
    for (std::size_t i = len; i > 0; --i) {
        out[i - 1] = static_cast<Element>(v & 1);
        v >>= 1;
    }
    return out;
}

}  // namespace

BinCodebook generate_individual(std::size_t k, std::size_t w, double epsilon, std::uint64_t seed,
                                Construction construction, std::uint64_t cell_cap)
{
    if (w == 0 || w >= k)
        throw std::invalid_argument("individual codebook needs 0 < w < k");
    if (k > 40)
        throw ResourceLimit("k too large for an enumerated codebook");
    const std::uint64_t delta = delta_for(w, k, epsilon);
    const std::uint64_t bins = std::uint64_t{1} << (k - w);
    check_cells(bins, delta, k, cell_cap);
    std::vector<std::uint64_t> slots(bins * delta);
    Rng rng(substream_seed(seed, "codebook"));
    switch (construction) {
    case Construction::iid:
        for (auto& s : slots)
            s = random_word(rng, k);
        break;
    case Construction::partition: {
        if (delta != (std::uint64_t{1} << w))
            throw std::invalid_argument("partition construction requires epsilon = 0");
        for (std::uint64_t i = 0; i < slots.size(); ++i)
            slots[i] = i;
        rng.shuffle(slots);
        break;
    }
    case Construction::coset:
        throw std::invalid_argument("use codebook_from_coset_code for coset construction");
    }
    return BinCodebook(BinMode::individual, construction, k, w, k, epsilon, seed, delta,
                       std::move(slots));
}

BinCodebook generate_strong(std::size_t k, std::size_t w, double epsilon, std::uint64_t seed,
                            std::size_t n, std::uint64_t cell_cap)
{
    if (k == 0 || w == 0)
        throw std::invalid_argument("strong codebook needs k >= 1 and w >= 1");
    if (n == 0)
        n = k + w;
    if (n < k + w)
        throw std::invalid_argument("strong codebook needs n >= k + w");
    if (n > 63 || k > 40)
        throw ResourceLimit("strong codebook dimensions too large");
    const std::uint64_t delta = delta_for(w, n, epsilon);
    const std::uint64_t bins = std::uint64_t{1} << k;
    check_cells(bins, delta, n, cell_cap);
    std::vector<std::uint64_t> slots(bins * delta);
    Rng rng(substream_seed(seed, "codebook"));
    for (auto& s : slots)
        s = random_word(rng, n);
    return BinCodebook(BinMode::strong, Construction::iid, k, w, n, epsilon, seed, delta,
                       std::move(slots));
}

BinCodebook codebook_from_coset_code(const CosetCode& code)
{
    if (code.field().order() != 2)
        throw std::invalid_argument("coset codebook needs a GF(2) code");
    if (code.w() == 0 || code.k() > 40)
        throw std::invalid_argument("coset codebook needs 0 < w and small k");
    const std::size_t k = code.k();
    const std::size_t w = code.w();
    const std::uint64_t delta = std::uint64_t{1} << w;
    const std::uint64_t bins = std::uint64_t{1} << (k - w);
    std::vector<std::uint64_t> slots(bins * delta);
    for (std::uint64_t m = 0; m < bins * delta; ++m)
        slots[m] = pack_bits(code.encode_column(index_to_bits(m, k)));
    return BinCodebook(BinMode::individual, Construction::coset, k, w, k, 0.0, 0, delta,
                       std::move(slots));
}

std::uint64_t pack_bits(std::span<const Element> bits)
{
    if (bits.size() > 64)
        throw std::invalid_argument("pack_bits: more than 64 bits");
    std::uint64_t v = 0;
    for (std::size_t j = 0; j < bits.size(); ++j) {
        if (bits[j] > 1)
            throw std::invalid_argument("pack_bits: entry is not a bit");
        v |= static_cast<std::uint64_t>(bits[j]) << j;
    }
    return v;
}

std::vector<Element> unpack_bits(std::uint64_t word, std::size_t n)
{
    std::vector<Element> out(n);
    for (std::size_t j = 0; j < n; ++j)
        out[j] = static_cast<Element>((word >> j) & 1);
    return out;
}

std::vector<Element> encode_individual(const BinCodebook& cb, std::span<const Element> message)
{
    if (cb.mode() != BinMode::individual)
        throw std::invalid_argument("encode_individual on a strong codebook");
    if (message.size() != cb.k())
        throw std::invalid_argument("message length != k");
    const std::size_t kp = cb.k() - cb.w();
    const auto bin = bits_to_index(message.subspan(0, kp));
    const auto slot = bits_to_index(message.subspan(kp));
    return unpack_bits(cb.codeword(bin, slot), cb.n());
}

BinDecode decode_individual(const BinCodebook& cb, std::span<const Element> codeword)
{
    if (cb.mode() != BinMode::individual)
        throw std::invalid_argument("decode_individual on a strong codebook");
    if (codeword.size() != cb.n())
        throw std::invalid_argument("codeword length != n");
    BinDecode out;
    for (auto [bin, slot] : cb.lookup(pack_bits(codeword)))
        out.candidates.push_back({bin, slot});
    if (out.candidates.empty()) {
        out.status = DecodeStatus::not_found;
    } else if (out.candidates.size() == 1) {
        out.status = DecodeStatus::unique;
        const std::size_t kp = cb.k() - cb.w();
        out.message = index_to_bits(out.candidates[0].bin, kp);
        auto tail = index_to_bits(out.candidates[0].slot, cb.w());
        out.message.insert(out.message.end(), tail.begin(), tail.end());
    } else {
        out.status = DecodeStatus::ambiguous;
    }
    return out;
}

std::vector<Element> encode_strong(const BinCodebook& cb, std::span<const Element> message,
                                   std::uint64_t randomness)
{
    if (cb.mode() != BinMode::strong)
        throw std::invalid_argument("encode_strong on an individual codebook");
    if (message.size() != cb.k())
        throw std::invalid_argument("message length != k");
    if (randomness >= cb.delta())
        throw std::invalid_argument("randomness index >= Delta");
    return unpack_bits(cb.codeword(bits_to_index(message), randomness), cb.n());
}

BinDecode decode_strong(const BinCodebook& cb, std::span<const Element> codeword)
{
    if (cb.mode() != BinMode::strong)
        throw std::invalid_argument("decode_strong on an individual codebook");
    if (codeword.size() != cb.n())
        throw std::invalid_argument("codeword length != n");
    BinDecode out;
    for (auto [bin, slot] : cb.lookup(pack_bits(codeword)))
        out.candidates.push_back({bin, slot});
    if (out.candidates.empty()) {
        out.status = DecodeStatus::not_found;
        return out;
    }
    const auto first_bin = out.candidates.front().bin;
    bool one_bin = std::all_of(out.candidates.begin(), out.candidates.end(),
                               [&](const BinCandidate& c) { return c.bin == first_bin; });
    if (one_bin) {
        out.status = DecodeStatus::unique;
        out.message = index_to_bits(first_bin, cb.k());
    } else {
        out.status = DecodeStatus::ambiguous;
    }
    return out;
}

ShellReport shell_report(const BinCodebook& cb, std::span<const std::size_t> positions,
                         std::span<const Element> values)
{
    if (positions.size() != values.size())
        throw std::invalid_argument("shell_report: positions and values differ in length");
    std::uint64_t mask = 0, pattern = 0;
    for (std::size_t i = 0; i < positions.size(); ++i) {
        if (positions[i] >= cb.n())
            throw std::invalid_argument("shell_report: position out of range");
        if (values[i] > 1)
            throw std::invalid_argument("shell_report: value is not a bit");
        const std::uint64_t bit = std::uint64_t{1} << positions[i];
        if ((mask & bit) && (((pattern & bit) != 0) != (values[i] != 0)))
            throw std::invalid_argument("shell_report: contradictory repeated position");
        mask |= bit;
        if (values[i])
            pattern |= bit;
    }
    ShellReport rep;
    rep.positions.assign(positions.begin(), positions.end());
    rep.values.assign(values.begin(), values.end());
    rep.per_bin.assign(cb.bin_count(), 0);
    const auto& slots = cb.slots();
    for (std::uint64_t i = 0; i < slots.size(); ++i)
        if ((slots[i] & mask) == pattern)
            ++rep.per_bin[i / cb.delta()];
    rep.min = *std::min_element(rep.per_bin.begin(), rep.per_bin.end());
    rep.max = *std::max_element(rep.per_bin.begin(), rep.per_bin.end());
    for (auto c : rep.per_bin)
        rep.total += c;
    rep.mean = static_cast<double>(rep.total) / static_cast<double>(rep.per_bin.size());
    return rep;
}

ConcentrationResult concentration_check(const BinCodebook& cb, std::size_t trials,
                                        double varepsilon, double threshold, std::uint64_t seed)
{
    if (trials == 0)
        throw std::invalid_argument("concentration_check: trials must be >= 1");
    ConcentrationResult res;
    res.expected = cb.expected_shell_count();
    const double lo = (1.0 - varepsilon) * res.expected;
    const double hi = (1.0 + varepsilon) * res.expected;
    Rng rng(substream_seed(seed, "concentration"));
    std::vector<std::size_t> all(cb.n());
    std::uint64_t within = 0;
    double sum = 0;
    res.min_count = ~std::uint64_t{0};
    for (std::size_t t = 0; t < trials; ++t) {
        for (std::size_t j = 0; j < all.size(); ++j)
            all[j] = j;
        rng.shuffle(all);
        std::vector<std::size_t> positions(all.begin(), all.begin() + static_cast<long>(cb.w()));
        std::sort(positions.begin(), positions.end());
        std::vector<Element> values(cb.w());
        for (auto& v : values)
            v = rng.bit();
        auto rep = shell_report(cb, positions, values);
        for (auto c : rep.per_bin) {
            const double d = static_cast<double>(c);
            if (d >= lo && d <= hi)
                ++within;
            sum += d;
            res.min_count = std::min(res.min_count, c);
            res.max_count = std::max(res.max_count, c);
            ++res.pairs;
        }
    }
    res.fraction_within = static_cast<double>(within) / static_cast<double>(res.pairs);
    res.mean_count = sum / static_cast<double>(res.pairs);
    res.pass = res.fraction_within >= threshold;
    return res;
}

void write_codebook(std::ostream& out, const BinCodebook& cb)
{
    std::ostringstream eps;
    eps.precision(17);
    eps << cb.epsilon();
    out << "codebook mode=" << to_string(cb.mode()) << " construction=" << to_string(cb.construction())
        << " k=" << cb.k() << " w=" << cb.w() << " n=" << cb.n() << " epsilon=" << eps.str()
        << " seed=" << cb.seed() << " delta=" << cb.delta() << '\n';
    for (std::uint64_t b = 0; b < cb.bin_count(); ++b) {
        for (std::uint64_t s = 0; s < cb.delta(); ++s) {
            if (s)
                out << ' ';
            auto word = cb.codeword(b, s);
            for (std::size_t j = 0; j < cb.n(); ++j)
                out << (((word >> j) & 1) ? '1' : '0');
        }
        out << '\n';
    }
}

BinCodebook read_codebook(std::istream& in)
{
    std::string line;
    if (!std::getline(in, line))
        throw ParseError("empty codebook file");
    std::istringstream head(line);
    std::string tag;
    head >> tag;
    if (tag != "codebook")
        throw ParseError("codebook header must start with 'codebook'");
    std::string mode, construction;
    std::size_t k = 0, w = 0, n = 0;
    double epsilon = -1;
    std::uint64_t seed = 0, delta = 0;
    bool seen[8] = {};
    std::string kv;
    while (head >> kv) {
        auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw ParseError("bad header field '" + kv + "'");
        auto key = kv.substr(0, eq);
        auto val = kv.substr(eq + 1);
        try {
            if (key == "mode")
                mode = val, seen[0] = true;
            else if (key == "construction")
                construction = val, seen[1] = true;
            else if (key == "k")
                k = std::stoul(val), seen[2] = true;
            else if (key == "w")
                w = std::stoul(val), seen[3] = true;
            else if (key == "n")
                n = std::stoul(val), seen[4] = true;
            else if (key == "epsilon")
                epsilon = std::stod(val), seen[5] = true;
            else if (key == "seed")
                seed = std::stoull(val), seen[6] = true;
            else if (key == "delta")
                delta = std::stoull(val), seen[7] = true;
            else
                throw ParseError("unknown header field '" + key + "'");
        } catch (const std::logic_error&) {
            throw ParseError("bad value in header field '" + kv + "'");
        }
    }
    for (bool s : seen)
        if (!s)
            throw ParseError("codebook header is missing a field");
    BinMode bm;
    if (mode == "individual")
        bm = BinMode::individual;
    else if (mode == "strong")
        bm = BinMode::strong;
    else
        throw ParseError("unknown mode '" + mode + "'");
    Construction c;
    if (construction == "iid")
        c = Construction::iid;
    else if (construction == "partition")
        c = Construction::partition;
    else if (construction == "coset")
        c = Construction::coset;
    else
        throw ParseError("unknown construction '" + construction + "'");
    if (n == 0 || n > 63 || k > 40)
        throw ParseError("codebook dimensions out of range");
    if (c != Construction::coset && delta != delta_for(w, n, epsilon))
        throw ParseError("delta does not match 2^(w + ceil(n epsilon))");
    std::vector<std::uint64_t> slots;
    std::string word;
    std::uint64_t bins_read = 0;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        std::istringstream ls(line);
        std::uint64_t in_bin = 0;
        while (ls >> word) {
            if (word.size() != n)
                throw ParseError("codeword '" + word + "' has wrong length");
            std::uint64_t v = 0;
            for (std::size_t j = 0; j < n; ++j) {
                if (word[j] != '0' && word[j] != '1')
                    throw ParseError("codeword '" + word + "' is not a bit string");
                if (word[j] == '1')
                    v |= std::uint64_t{1} << j;
            }
            slots.push_back(v);
            ++in_bin;
        }
        if (in_bin != delta)
            throw ParseError("bin " + std::to_string(bins_read) + " holds " +
                             std::to_string(in_bin) + " codewords, expected " +
                             std::to_string(delta));
        ++bins_read;
    }
    try {
        BinCodebook cb(bm, c, k, w, n, epsilon, seed, delta, std::move(slots));
        if (c == Construction::partition && !cb.injective())
            throw ParseError("partition codebook is not a bijection");
        return cb;
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("invalid codebook: ") + e.what());
    }
}

}  // namespace smsm

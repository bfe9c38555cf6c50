#include "packlim/sequences.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace packlim {

namespace {

constexpr std::uint64_t kDirectWindowCap = 64;
constexpr std::uint64_t kPowerHead = 1024;
constexpr std::uint64_t kPowerPrefixCap = (std::uint64_t{1} << 22) + 4;
constexpr std::uint64_t kSearchCap = std::uint64_t{1} << 62;

}  // namespace

struct GapSequence::Cache {
    std::mutex mutex;
    std::vector<double> prefix;  // prefix[j-1] = sum_{i<=j} l_i, compensated
    std::vector<double> suffix;  // explicit model: suffix[j-1] = sum_{i>=j} l_i + tail
    double run_sum = 0.0;        // raw accumulator for prefix extension
    double run_carry = 0.0;      // its compensation
    bool total_known = false;
    Interval total{};
};

GapSequence GapSequence::power_law(double scale, double dim) {
    if (!(scale > 0.0)) throw Error("power-law scale must be positive");
    if (!(dim > 0.0 && dim < 1.0)) throw Error("power-law dimension must lie in (0,1)");
    GapSequence s;
    s.model_ = GapModel::power_law;
    s.scale_ = scale;
    s.dim_ = dim;
    s.cache_ = std::make_shared<Cache>();
    return s;
}

GapSequence GapSequence::block_geometric(double length_ratio, std::uint64_t count_factor,
                                         double base) {
    if (!(length_ratio > 0.0 && length_ratio < 1.0))
        throw Error("block length ratio must lie in (0,1)");
    if (count_factor < 2) throw Error("block count factor must be at least 2");
    if (!(base > 0.0)) throw Error("block base length must be positive");
    if (!(static_cast<double>(count_factor) * length_ratio < 1.0))
        throw Error("block-geometric sequence is not summable: m * rho >= 1");
    GapSequence s;
    s.model_ = GapModel::block_geometric;
    s.ratio_ = length_ratio;
    s.count_factor_ = count_factor;
    s.base_ = base;
    s.cache_ = std::make_shared<Cache>();
    std::uint64_t first = 1;
    s.block_firsts_.push_back(first);
    while (first <= std::numeric_limits<std::uint64_t>::max() / count_factor) {
        first *= count_factor;
        s.block_firsts_.push_back(first);
    }
    return s;
}

GapSequence GapSequence::from_system(const SelfSimilarSystem& system) {
    GapSequence s;
    s.model_ = GapModel::from_system;
    s.system_ = std::make_shared<SelfSimilarSystem>(system);
    s.enumerator_ = std::make_shared<GapEnumerator>(system);
    s.cache_ = std::make_shared<Cache>();
    return s;
}

GapSequence GapSequence::explicit_list(std::vector<double> lengths, double tail_total) {
    if (lengths.empty()) throw Error("explicit gap list must be non-empty");
    if (!(tail_total >= 0.0)) throw Error("explicit tail total must be non-negative");
    for (std::size_t i = 0; i < lengths.size(); ++i) {
        if (!(lengths[i] > 0.0)) throw Error("gap lengths must be positive");
        if (i > 0 && lengths[i] > lengths[i - 1])
            throw Error("gap lengths must be non-increasing");
    }
    GapSequence s;
    s.model_ = GapModel::explicit_list;
    s.lengths_ = std::move(lengths);
    s.tail_total_ = tail_total;
    s.cache_ = std::make_shared<Cache>();

    auto& c = *s.cache_;
    c.prefix.resize(s.lengths_.size());
    CompensatedSum acc;
    for (std::size_t i = 0; i < s.lengths_.size(); ++i) {
        acc.add(s.lengths_[i]);
        c.prefix[i] = acc.value();
    }
    c.suffix.resize(s.lengths_.size());
    CompensatedSum back;
    back.add(tail_total);
    for (std::size_t i = s.lengths_.size(); i-- > 0;) {
        back.add(s.lengths_[i]);
        c.suffix[i] = back.value();
    }
    c.total_known = true;
    c.total = {c.suffix[0], c.suffix[0]};
    return s;
}

double GapSequence::power_scale() const {
    if (model_ != GapModel::power_law) throw std::logic_error("not a power-law sequence");
    return scale_;
}
double GapSequence::power_dim() const {
    if (model_ != GapModel::power_law) throw std::logic_error("not a power-law sequence");
    return dim_;
}
double GapSequence::block_ratio() const {
    if (model_ != GapModel::block_geometric) throw std::logic_error("not block-geometric");
    return ratio_;
}
std::uint64_t GapSequence::block_count_factor() const {
    if (model_ != GapModel::block_geometric) throw std::logic_error("not block-geometric");
    return count_factor_;
}
double GapSequence::block_base() const {
    if (model_ != GapModel::block_geometric) throw std::logic_error("not block-geometric");
    return base_;
}
const std::vector<double>& GapSequence::explicit_lengths() const {
    if (model_ != GapModel::explicit_list) throw std::logic_error("not an explicit list");
    return lengths_;
}
double GapSequence::explicit_tail() const {
    if (model_ != GapModel::explicit_list) throw std::logic_error("not an explicit list");
    return tail_total_;
}
const SelfSimilarSystem& GapSequence::system() const {
    if (model_ != GapModel::from_system) throw std::logic_error("not a system sequence");
    return *system_;
}

void GapSequence::set_tail_tolerance(double tol) {
    if (!(tol > 0.0)) throw Error("tail tolerance must be positive");
    tail_relative_tol_ = tol;
}

std::uint64_t GapSequence::addressable_limit() const {
    switch (model_) {
        case GapModel::explicit_list: return lengths_.size();
        case GapModel::from_system: return GapEnumerator::kCountCap;
        default: return kSearchCap;
    }
}

// ---- block-geometric helpers -------------------------------------------------

std::uint64_t GapSequence::block_of(std::uint64_t j) const {
    // unique k with m^(k-1) <= j <= m^k - 1
    auto it = std::upper_bound(block_firsts_.begin(), block_firsts_.end(), j);
    return static_cast<std::uint64_t>(it - block_firsts_.begin());
}

double GapSequence::block_length(std::uint64_t k) const {
    return base_ * std::pow(ratio_, static_cast<double>(k));
}

std::uint64_t GapSequence::block_first(std::uint64_t k) const {
    if (k > block_firsts_.size())
        throw IndexBeyondExplicit("block index overflows 64-bit range");
    return block_firsts_[k - 1];
}

std::uint64_t GapSequence::block_last(std::uint64_t k) const {
    std::uint64_t first = block_first(k);
    if (first > std::numeric_limits<std::uint64_t>::max() / count_factor_)
        return std::numeric_limits<std::uint64_t>::max();
    return first * count_factor_ - 1;
}

double GapSequence::block_suffix(std::uint64_t k) const {
    // sum over blocks >= k of m^(j-1)(m-1) b rho^j = b (m-1)/m (m rho)^k / (1 - m rho)
    double mr = static_cast<double>(count_factor_) * ratio_;
    double m = static_cast<double>(count_factor_);
    return base_ * (m - 1.0) / m * std::pow(mr, static_cast<double>(k)) / (1.0 - mr);
}

// ---- power-law helpers -------------------------------------------------------

namespace {

struct PowerTail {
    double value;
    double error;
};

// Euler-Maclaurin for sum_{j>=m} L j^(-1/d), m large. x^(-1/d) is completely
// monotone, so the remainder after the f' term is bounded by |f'''(m)|/720.
PowerTail power_tail_em(double scale, double dim, double m) {
    double q = 1.0 / dim;
    double integral = scale * dim / (1.0 - dim) * std::pow(m, 1.0 - q);
    double f = scale * std::pow(m, -q);
    double fp_term = scale * q * std::pow(m, -q - 1.0) / 12.0;
    double value = integral + 0.5 * f + fp_term;
    double err = scale * q * (q + 1.0) * (q + 2.0) * std::pow(m, -q - 3.0) / 720.0;
    err = 2.0 * err + 4e-16 * value;
    return {value, err};
}

}  // namespace

Interval GapSequence::power_tail_bracket(std::uint64_t n) const {
    // exact head plus an Euler-Maclaurin remainder; the head extends until the
    // bracket meets the requested relative tolerance (knife edges may need it)
    constexpr std::uint64_t kRefineCap = 10000000;
    std::uint64_t em_start = std::max<std::uint64_t>(n, kPowerHead + 1);
    while (true) {
        // summed directly: a prefix difference would reintroduce cancellation
        CompensatedSum acc;
        for (std::uint64_t j = n; j < em_start; ++j)
            acc.add(scale_ * std::pow(static_cast<double>(j), -1.0 / dim_));
        double head = acc.value();
        PowerTail t = power_tail_em(scale_, dim_, static_cast<double>(em_start));
        double value = head + t.value;
        double err = t.error + 3e-16 * head;
        if (err <= tail_relative_tol_ * value || em_start >= kRefineCap)
            return {value - err, value + err};
        em_start = std::min(kRefineCap, em_start * 2);
    }
}

double GapSequence::power_window_direct(std::uint64_t n, std::uint64_t k) const {
    CompensatedSum acc;
    for (std::uint64_t j = n; j < n + k; ++j)
        acc.add(scale_ * std::pow(static_cast<double>(j), -1.0 / dim_));
    return acc.value();
}

void GapSequence::ensure_prefix(std::uint64_t n) const {
    auto& c = *cache_;
    if (n > kPowerPrefixCap)
        throw DepthCapExceeded("power-law prefix cache beyond cap");
    std::lock_guard<std::mutex> lock(c.mutex);
    std::uint64_t have = c.prefix.size();
    if (n <= have) return;
    if (n > c.prefix.capacity()) {
        std::uint64_t target = std::max<std::uint64_t>(1024, c.prefix.capacity());
        while (target < n) target *= 2;
        c.prefix.reserve(target);
    }
    double sum = c.run_sum;
    double carry = c.run_carry;
    for (std::uint64_t j = have + 1; j <= n; ++j) {
        double x = scale_ * std::pow(static_cast<double>(j), -1.0 / dim_);
        double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            carry += (sum - t) + x;
        else
            carry += (x - t) + sum;
        sum = t;
        c.prefix.push_back(sum + carry);
    }
    c.run_sum = sum;
    c.run_carry = carry;
}

// ---- public operations -------------------------------------------------------

double GapSequence::length(std::uint64_t j) const {
    if (j == 0) throw Error("gap indices are 1-based");
    switch (model_) {
        case GapModel::power_law:
            return scale_ * std::pow(static_cast<double>(j), -1.0 / dim_);
        case GapModel::block_geometric:
            return block_length(block_of(j));
        case GapModel::explicit_list:
            if (j > lengths_.size())
                throw IndexBeyondExplicit("gap index " + std::to_string(j) +
                                          " beyond stored list");
            return lengths_[j - 1];
        case GapModel::from_system: {
            std::lock_guard<std::mutex> lock(cache_->mutex);
            enumerator_->ensure(j);
            return enumerator_->gap(j);
        }
    }
    throw std::logic_error("unreachable");
}

double GapSequence::prefix_sum(std::uint64_t n) const {
    if (n == 0) return 0.0;
    switch (model_) {
        case GapModel::power_law:
            ensure_prefix(n);
            return cache_->prefix[n - 1];
        case GapModel::block_geometric:
            return window_sum(1, n);
        case GapModel::explicit_list:
            if (n > lengths_.size())
                throw IndexBeyondExplicit("prefix beyond stored list");
            return cache_->prefix[n - 1];
        case GapModel::from_system: {
            std::lock_guard<std::mutex> lock(cache_->mutex);
            enumerator_->ensure(n);
            return enumerator_->prefix_sum(n);
        }
    }
    throw std::logic_error("unreachable");
}

double GapSequence::window_sum(std::uint64_t n, std::uint64_t k) const {
    if (n == 0 || k == 0) throw Error("window indices and sizes are 1-based");
    if (k > std::numeric_limits<std::uint64_t>::max() - n)
        throw Error("window extends beyond the index range");
    switch (model_) {
        case GapModel::power_law: {
            if (k <= kDirectWindowCap) return power_window_direct(n, k);
            if (n + k - 1 <= kPowerPrefixCap) {
                ensure_prefix(n + k - 1);
                const auto& p = cache_->prefix;
                return p[n + k - 2] - (n >= 2 ? p[n - 2] : 0.0);
            }
            if (n <= kPowerHead) {
                double head = power_window_direct(n, kPowerHead + 1 - n);
                return head + window_sum(kPowerHead + 1, k - (kPowerHead + 1 - n));
            }
            // cancellation-free Euler-Maclaurin difference
            double q = 1.0 / dim_;
            double a = static_cast<double>(n);
            double h = static_cast<double>(k);
            double integral = scale_ * dim_ / (1.0 - dim_) * power_window(a, h, 1.0 - q);
            double half = 0.5 * scale_ * power_window(a, h, -q);
            double fp = scale_ * q / 12.0 * power_window(a, h, -q - 1.0);
            return integral + half + fp;
        }
        case GapModel::block_geometric: {
            std::uint64_t lo = n;
            std::uint64_t hi = n + k - 1;
            CompensatedSum acc;
            std::uint64_t b = block_of(lo);
            while (lo <= hi) {
                std::uint64_t last = block_last(b);
                std::uint64_t upper = std::min(hi, last);
                double count = static_cast<double>(upper - lo + 1);
                acc.add(count * block_length(b));
                if (upper == hi) break;
                lo = upper + 1;
                ++b;
            }
            return acc.value();
        }
        case GapModel::explicit_list: {
            if (tail_total_ == 0.0) {
                // genuinely finite: gaps beyond the list contribute nothing
                std::uint64_t lo = std::min<std::uint64_t>(n, lengths_.size() + 1);
                std::uint64_t hi = std::min<std::uint64_t>(n + k - 1, lengths_.size());
                if (lo > hi) return 0.0;
                const auto& p = cache_->prefix;
                return p[hi - 1] - (lo >= 2 ? p[lo - 2] : 0.0);
            }
            if (n + k - 1 > lengths_.size())
                throw IndexBeyondExplicit("window crosses the aggregated tail");
            const auto& p = cache_->prefix;
            return p[n + k - 2] - (n >= 2 ? p[n - 2] : 0.0);
        }
        case GapModel::from_system: {
            std::lock_guard<std::mutex> lock(cache_->mutex);
            enumerator_->ensure(n + k - 1);
            return enumerator_->prefix_sum(n + k - 1) - enumerator_->prefix_sum(n - 1);
        }
    }
    throw std::logic_error("unreachable");
}

Interval GapSequence::tail_sum_bracket(std::uint64_t n) const {
    if (n == 0) throw Error("tail indices are 1-based");
    switch (model_) {
        case GapModel::power_law:
            return power_tail_bracket(n);
        case GapModel::block_geometric: {
            // closed form, exact to rounding; ties against epsilon resolve
            // arbitrarily but harmlessly (the cutoff is only a horizon)
            std::uint64_t b = block_of(n);
            std::uint64_t last = block_last(b);
            double within = static_cast<double>(last - n + 1) * block_length(b);
            double v = within + block_suffix(b + 1);
            return {v, v};
        }
        case GapModel::explicit_list: {
            if (n <= lengths_.size()) {
                double v = cache_->suffix[n - 1];
                return {v, v};
            }
            if (n == lengths_.size() + 1) return {tail_total_, tail_total_};
            throw IndexBeyondExplicit("tail start beyond the aggregated tail");
        }
        case GapModel::from_system: {
            std::lock_guard<std::mutex> lock(cache_->mutex);
            enumerator_->ensure(n >= 1 ? n : 1);
            double v = 1.0 - enumerator_->prefix_sum(n - 1);
            return {v, v};
        }
    }
    throw std::logic_error("unreachable");
}

double GapSequence::tail_sum(std::uint64_t n) const { return tail_sum_bracket(n).mid(); }

double GapSequence::total() const {
    auto& c = *cache_;
    {
        std::lock_guard<std::mutex> lock(c.mutex);
        if (c.total_known) return c.total.mid();
    }
    Interval t = tail_sum_bracket(1);
    std::lock_guard<std::mutex> lock(c.mutex);
    c.total = t;
    c.total_known = true;
    return t.mid();
}

std::uint64_t GapSequence::max_window_start(std::uint64_t k, double eps) const {
    if (!(eps > 0.0)) throw Error("epsilon must be positive");
    if (k == 0) throw Error("window size must be positive");

    std::uint64_t last_start = addressable_limit();
    if (model_ == GapModel::explicit_list) {
        if (tail_total_ == 0.0) {
            last_start = lengths_.size();  // later windows are zero-padded
        } else {
            if (k > lengths_.size())
                throw IndexBeyondExplicit("window size exceeds the stored list");
            last_start = lengths_.size() - k + 1;
        }
    } else if (last_start > k) {
        last_start -= k;  // keep n + k - 1 addressable
    }

    if (window_sum(1, k) < eps) throw EpsilonTooLarge("epsilon exceeds the first window");

    // exponential search for hi with p(hi, k) < eps; p is non-increasing in n
    std::uint64_t lo = 1;
    std::uint64_t hi = 2;
    while (true) {
        if (hi >= last_start) {
            hi = last_start;
            if (window_sum(hi, k) >= eps) {
                if (model_ == GapModel::explicit_list)
                    throw IndexBeyondExplicit("window search crosses the aggregated tail");
                if (model_ == GapModel::from_system)
                    throw DepthCapExceeded("window search beyond the enumeration cap");
                return hi;
            }
            break;
        }
        if (window_sum(hi, k) < eps) break;
        lo = hi;
        hi *= 2;
    }
    // invariant: p(lo, k) >= eps, p(hi, k) < eps
    while (hi - lo > 1) {
        std::uint64_t mid = lo + (hi - lo) / 2;
        if (window_sum(mid, k) >= eps)
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

std::uint64_t GapSequence::tail_cutoff(double eps) const {
    if (!(eps > 0.0)) throw Error("epsilon must be positive");
    auto decide = [&](std::uint64_t n) -> int {
        Interval t = tail_sum_bracket(n);
        if (t.hi <= eps) return 1;   // tail definitely <= eps
        if (t.lo > eps) return 0;    // definitely above
        if (t.is_point()) return t.lo <= eps ? 1 : 0;
        throw Indeterminate("tail bracket at n=" + std::to_string(n) +
                            " cannot be separated from epsilon");
    };
    if (decide(1)) return 1;
    std::uint64_t limit = addressable_limit();
    if (model_ == GapModel::explicit_list) limit = lengths_.size() + 1;
    std::uint64_t lo = 1;  // tail(lo) > eps
    std::uint64_t hi = 2;
    while (true) {
        if (hi >= limit) {
            hi = limit;
            if (!decide(limit)) {
                if (model_ == GapModel::explicit_list)
                    throw IndexBeyondExplicit("tail cutoff lies beyond the aggregated tail");
                throw DepthCapExceeded("tail cutoff beyond the addressable range");
            }
            break;
        }
        if (decide(hi)) break;
        lo = hi;
        hi *= 2;
    }
    while (hi - lo > 1) {
        std::uint64_t mid = lo + (hi - lo) / 2;
        if (decide(mid))
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

}  // namespace packlim

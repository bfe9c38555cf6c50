#include "packlim/self_similar.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "packlim/numeric.hpp"

namespace packlim {

SelfSimilarSystem::SelfSimilarSystem(std::vector<double> ratios, std::vector<double> gaps)
    : ratios_(std::move(ratios)), gaps_(std::move(gaps)) {
    if (ratios_.size() < 2)
        throw Error("self-similar system needs at least two contractions");
    if (gaps_.size() + 1 != ratios_.size())
        throw Error("self-similar system needs one gap fewer than contractions");
    double sum = 0.0;
    for (double r : ratios_) {
        if (!(r > 0.0 && r < 1.0)) throw Error("contraction ratios must lie in (0,1)");
        sum += r;
    }
    for (double b : gaps_) {
        if (!(b > 0.0)) throw Error("child gaps must be positive");
        sum += b;
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw Error("ratios and gaps must tile [0,1]: sum differs from 1 by " +
                    std::to_string(sum - 1.0));

    offsets_.resize(ratios_.size());
    double off = 0.0;
    for (std::size_t i = 0; i < ratios_.size(); ++i) {
        offsets_[i] = off;
        off += ratios_[i];
        if (i + 1 < ratios_.size()) off += gaps_[i];
    }
}

double SelfSimilarSystem::min_ratio() const {
    return *std::min_element(ratios_.begin(), ratios_.end());
}

double SelfSimilarSystem::min_gap() const {
    return *std::min_element(gaps_.begin(), gaps_.end());
}

GapEnumerator::GapEnumerator(const SelfSimilarSystem& system) : system_(system) {
    heap_.push_back(1.0);
    max_gap_factor_ = *std::max_element(system_.gaps().begin(), system_.gaps().end());
}

void GapEnumerator::ensure(std::size_t count) {
    if (count <= validated_) return;
    if (count > kCountCap)
        throw DepthCapExceeded("gap enumeration beyond cap " + std::to_string(kCountCap));

    auto cmp = std::less<double>();  // std::*_heap with less is a max-heap
    std::size_t next_check = std::max(count, validated_ + 1);
    while (true) {
        if (emitted_.size() >= next_check) {
            // Gaps from unpopped cylinders stay strictly below top * max gap
            // factor, so emitted gaps above that threshold are final.
            double guarantee = heap_.front() * max_gap_factor_;
            std::size_t safe = 0;
            for (double g : emitted_)
                if (g > guarantee) ++safe;
            if (safe >= count) break;
            next_check = emitted_.size() + std::max<std::size_t>(emitted_.size() / 2, 64);
        }
        double top = heap_.front();
        std::pop_heap(heap_.begin(), heap_.end(), cmp);
        heap_.pop_back();
        for (double b : system_.gaps()) emitted_.push_back(top * b);
        for (double r : system_.ratios()) {
            heap_.push_back(top * r);
            std::push_heap(heap_.begin(), heap_.end(), cmp);
        }
    }

    std::sort(emitted_.begin(), emitted_.end(), std::greater<double>());
    double guarantee = heap_.front() * max_gap_factor_;
    std::size_t safe = 0;
    while (safe < emitted_.size() && emitted_[safe] > guarantee) ++safe;
    validated_ = std::max(validated_, safe);

    prefix_.resize(validated_);
    CompensatedSum acc;
    for (std::size_t i = 0; i < validated_; ++i) {
        acc.add(emitted_[i]);
        prefix_[i] = acc.value();
    }
}

double GapEnumerator::gap(std::size_t index1) const {
    if (index1 == 0 || index1 > validated_)
        throw IndexBeyondExplicit("gap index " + std::to_string(index1) +
                                  " beyond validated prefix");
    return emitted_[index1 - 1];
}

double GapEnumerator::prefix_sum(std::size_t n) const {
    if (n == 0) return 0.0;
    if (n > validated_)
        throw IndexBeyondExplicit("prefix beyond validated enumeration");
    return prefix_[n - 1];
}

}  // namespace packlim

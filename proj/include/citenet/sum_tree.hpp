#pragma once

#include <cassert>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

namespace citenet {

/// Complete binary tree of partial weight sums over a fixed number of leaves.
/// Drawing a leaf proportional to its weight and changing a single weight are
/// both O(log n). Parents are recomputed from their children on every update,
/// so zeroing a weight and later restoring it leaves no rounding residue.
class SumTree {
public:
    SumTree() = default;
    explicit SumTree(std::size_t size) { reset(size); }

    /// Resize to `size` leaves, all zero.
    void reset(std::size_t size) {
        size_ = size;
        leaves_ = 1;
        while (leaves_ < size_) leaves_ <<= 1;
        nodes_.assign(2 * leaves_, 0.0);
    }

    /// Replace all leaf weights and rebuild the interior in O(n).
    void assign(std::span<const double> weights) {
        reset(weights.size());
        for (std::size_t i = 0; i < weights.size(); ++i) {
            if (!(weights[i] >= 0.0)) throw std::invalid_argument("SumTree: negative weight");
            nodes_[leaves_ + i] = weights[i];
        }
        for (std::size_t k = leaves_ - 1; k >= 1; --k) nodes_[k] = nodes_[2 * k] + nodes_[2 * k + 1];
    }

    std::size_t size() const noexcept { return size_; }
    double total() const noexcept { return nodes_.size() > 1 ? nodes_[1] : 0.0; }
    double weight(std::size_t i) const {
        assert(i < size_);
        return nodes_[leaves_ + i];
    }

    void set(std::size_t i, double w) {
        assert(i < size_);
        if (!(w >= 0.0)) throw std::invalid_argument("SumTree: negative weight");
        std::size_t k = leaves_ + i;
        nodes_[k] = w;
        for (k >>= 1; k >= 1; k >>= 1) nodes_[k] = nodes_[2 * k] + nodes_[2 * k + 1];
    }

    /// Leaf holding cumulative position u, 0 <= u < total(). Never returns a
    /// zero-weight leaf while total() > 0.
    std::size_t find(double u) const {
        std::size_t k = 1;
        while (k < leaves_) {
            const double left = nodes_[2 * k];
            const double right = nodes_[2 * k + 1];
            if ((u < left && left > 0.0) || right <= 0.0) {
                k = 2 * k;
            } else {
                u -= left;
                k = 2 * k + 1;
            }
        }
        return k - leaves_;
    }

    template <typename Gen>
    std::size_t sample(Gen& gen) const {
        if (!(total() > 0.0)) throw std::logic_error("SumTree: sampling from zero total weight");
        std::uniform_real_distribution<double> unif(0.0, total());
        return find(unif(gen));
    }

private:
    std::size_t size_ = 0;
    std::size_t leaves_ = 1;
    std::vector<double> nodes_ = std::vector<double>(2, 0.0);  // 1-based heap layout
};

}  // namespace citenet

#pragma once

#include <numeric>
#include <utility>
#include <vector>

namespace bispan {

// Union by size with path halving. Roots are not canonical; use
// `canonical_labels` for deterministic class ids.
class DisjointSet
{
  public:
    DisjointSet() = default;
    explicit DisjointSet(std::size_t n) : parent_(n), size_(n, 1)
    {
        std::iota(parent_.begin(), parent_.end(), std::size_t{0});
    }

    std::size_t size() const { return parent_.size(); }

    std::size_t find(std::size_t x)
    {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    bool unite(std::size_t a, std::size_t b)
    {
        a = find(a);
        b = find(b);
        if (a == b)
            return false;
        if (size_[a] < size_[b])
            std::swap(a, b);
        parent_[b] = a;
        size_[a] += size_[b];
        return true;
    }

    // Class ids numbered by first appearance in index order, so class 0
    // contains element 0 and every class's smallest element is its
    // representative.
    std::vector<int> canonical_labels(int* n_classes = nullptr)
    {
        std::vector<int> root_label(parent_.size(), -1), label(parent_.size());
        int next = 0;
        for (std::size_t i = 0; i < parent_.size(); ++i) {
            auto r = find(i);
            if (root_label[r] < 0)
                root_label[r] = next++;
            label[i] = root_label[r];
        }
        if (n_classes)
            *n_classes = next;
        return label;
    }

  private:
    std::vector<std::size_t> parent_;
    std::vector<std::size_t> size_;
};

} // namespace bispan

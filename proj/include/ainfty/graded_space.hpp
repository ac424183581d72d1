// Finite graded bases with involutions, and sparse degree-homogeneous maps.
#pragma once

#include <memory>
#include <numeric>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "ainfty/linalg.hpp"
#include "ainfty/scalar.hpp"

namespace ainfty {

/// Finite graded basis with an involution (degree-0, squares to identity).
/// The involution is stored column-wise: star[i] = image of basis vector i.
template <typename K>
class GradedSpace {
public:
    GradedSpace(std::string label, std::vector<std::string> names, std::vector<int> degrees)
        : label_(std::move(label)), names_(std::move(names)), degrees_(std::move(degrees))
    {
        if (names_.size() != degrees_.size())
            throw Error("GradedSpace " + label_ + ": names/degrees size mismatch");
        std::unordered_map<std::string, int> seen;
        for (std::size_t i = 0; i < names_.size(); ++i) {
            if (!seen.emplace(names_[i], static_cast<int>(i)).second)
                throw Error("GradedSpace " + label_ + ": duplicate basis name " + names_[i]);
        }
        index_ = std::move(seen);
        star_.resize(names_.size());
        for (std::size_t i = 0; i < names_.size(); ++i)
            star_[i] = {{static_cast<int>(i), K(1)}};
    }

    int dim() const { return static_cast<int>(names_.size()); }
    const std::string& label() const { return label_; }
    const std::string& name(int i) const { return names_[i]; }
    int degree(int i) const { return degrees_[i]; }
    const std::vector<int>& degrees() const { return degrees_; }

    int index_of(const std::string& name) const
    {
        auto it = index_.find(name);
        if (it == index_.end())
            throw Error("unknown basis name '" + name + "' in space " + label_);
        return it->second;
    }
    bool has(const std::string& name) const { return index_.count(name) != 0; }

    /// Installs the involution; verifies degree 0 and star^2 = id.
    void set_involution(std::vector<SparseRow<K>> star)
    {
        if (static_cast<int>(star.size()) != dim())
            throw Error("involution size mismatch on " + label_);
        for (int i = 0; i < dim(); ++i)
            for (const auto& [j, v] : star[i])
                if (degrees_[j] != degrees_[i])
                    throw Error("involution on " + label_ + " is not degree-0 at " + names_[i]);
        star_ = std::move(star);
        for (int i = 0; i < dim(); ++i) {
            SparseRow<K> sq = apply_star(star_[i]);
            if (!(sq.size() == 1 && sq.front().first == i && sq.front().second == K(1)))
                throw Error("involution on " + label_ + " does not square to identity at " + names_[i]);
        }
    }

    const SparseRow<K>& star(int i) const { return star_[i]; }

    SparseRow<K> apply_star(const SparseRow<K>& v) const
    {
        SparseRow<K> out;
        for (const auto& [i, c] : v)
            out = sparse_axpy(out, c, star_[i]);
        return out;
    }

    bool star_is_identity() const
    {
        for (int i = 0; i < dim(); ++i)
            if (!(star_[i].size() == 1 && star_[i].front().first == i && star_[i].front().second == K(1)))
                return false;
        return true;
    }

    bool same_basis(const GradedSpace& o) const
    {
        return this == &o || (names_ == o.names_ && degrees_ == o.degrees_);
    }

private:
    std::string label_;
    std::vector<std::string> names_;
    std::vector<int> degrees_;
    std::unordered_map<std::string, int> index_;
    std::vector<SparseRow<K>> star_;
};

template <typename K>
using SpacePtr = std::shared_ptr<const GradedSpace<K>>;

/// Sparse degree-homogeneous linear map. Stored column-wise (image of each
/// source basis vector), entries sorted: the canonical triplet order.
template <typename K>
class GradedMap {
public:
    GradedMap() = default;
    GradedMap(SpacePtr<K> source, SpacePtr<K> target, int degree)
        : source_(std::move(source)), target_(std::move(target)), degree_(degree),
          cols_(source_->dim())
    {
    }

    static GradedMap identity(const SpacePtr<K>& s)
    {
        GradedMap m(s, s, 0);
        for (int i = 0; i < s->dim(); ++i)
            m.cols_[i] = {{i, K(1)}};
        return m;
    }

    static GradedMap star_map(const SpacePtr<K>& s)
    {
        GradedMap m(s, s, 0);
        for (int i = 0; i < s->dim(); ++i)
            m.cols_[i] = s->star(i);
        return m;
    }

    const SpacePtr<K>& source() const { return source_; }
    const SpacePtr<K>& target() const { return target_; }
    int degree() const { return degree_; }

    void add_entry(int src, int dst, const K& value)
    {
        if (is_zero(value))
            return;
        if (target_->degree(dst) != source_->degree(src) + degree_) {
            throw Error("entry " + source_->name(src) + " -> " + target_->name(dst) +
                        " violates degree " + std::to_string(degree_) + " homogeneity (" +
                        source_->label() + " -> " + target_->label() + ")");
        }
        auto& col = cols_[src];
        auto it = std::lower_bound(col.begin(), col.end(), dst,
                                   [](const auto& e, int d) { return e.first < d; });
        if (it != col.end() && it->first == dst) {
            it->second += value;
            if (is_zero(it->second))
                col.erase(it);
        } else {
            col.insert(it, {dst, value});
        }
    }

    const SparseRow<K>& column(int src) const { return cols_[src]; }

    SparseRow<K> apply(const SparseRow<K>& v) const
    {
        SparseRow<K> out;
        for (const auto& [i, c] : v)
            out = sparse_axpy(out, c, cols_[i]);
        return out;
    }

    bool is_zero_map() const
    {
        for (const auto& col : cols_)
            if (!col.empty())
                return false;
        return true;
    }

    /// First nonzero column index, or -1; "first failing source basis vector"
    /// for witness reporting.
    int first_nonzero_column() const
    {
        for (std::size_t i = 0; i < cols_.size(); ++i)
            if (!cols_[i].empty())
                return static_cast<int>(i);
        return -1;
    }

    GradedMap operator+(const GradedMap& o) const
    {
        require_same_shape(o);
        GradedMap out(source_, target_, degree_);
        for (int i = 0; i < source_->dim(); ++i)
            out.cols_[i] = sparse_axpy(cols_[i], K(1), o.cols_[i]);
        return out;
    }
    GradedMap operator-(const GradedMap& o) const { return *this + o.scaled(K(-1)); }

    GradedMap scaled(const K& c) const
    {
        GradedMap out(source_, target_, degree_);
        if (is_zero(c))
            return out;
        for (int i = 0; i < source_->dim(); ++i)
            for (const auto& [j, v] : cols_[i])
                out.cols_[i].emplace_back(j, c * v);
        return out;
    }

    bool operator==(const GradedMap& o) const
    {
        return source_->same_basis(*o.source_) && target_->same_basis(*o.target_) &&
               degree_ == o.degree_ && cols_ == o.cols_;
    }

    DenseMatrix<K> dense() const
    {
        DenseMatrix<K> m = DenseMatrix<K>::Zero(target_->dim(), source_->dim());
        for (int i = 0; i < source_->dim(); ++i)
            for (const auto& [j, v] : cols_[i])
                m(j, i) = v;
        return m;
    }

    /// Columns as sparse rows (source index -> entries) for elimination.
    const std::vector<SparseRow<K>>& columns() const { return cols_; }

private:
    void require_same_shape(const GradedMap& o) const
    {
        if (!source_->same_basis(*o.source_) || !target_->same_basis(*o.target_) ||
            degree_ != o.degree_)
            throw Error("graded map shape mismatch: " + source_->label() + "->" + target_->label() +
                        " vs " + o.source_->label() + "->" + o.target_->label());
    }

    SpacePtr<K> source_;
    SpacePtr<K> target_;
    int degree_{0};
    std::vector<SparseRow<K>> cols_;
};

/// f after g. Degrees add; spaces must match.
template <typename K>
GradedMap<K> compose(const GradedMap<K>& f, const GradedMap<K>& g)
{
    if (!g.target()->same_basis(*f.source()))
        throw Error("cannot compose: target space '" + g.target()->label() +
                    "' does not match source space '" + f.source()->label() + "'");
    GradedMap<K> out(g.source(), f.target(), f.degree() + g.degree());
    for (int i = 0; i < g.source()->dim(); ++i) {
        SparseRow<K> img = f.apply(g.column(i));
        for (const auto& [j, v] : img)
            out.add_entry(i, j, v);
    }
    return out;
}

/// Exact rank over the field via fraction-free sparse elimination.
template <typename K>
int rank(const GradedMap<K>& m)
{
    SparseRows<K> rows = m.columns(); // rank(A) = rank(A^T)
    return sparse_rank(std::move(rows), m.target()->dim());
}

template <typename K>
int kernel_dim(const GradedMap<K>& m)
{
    return m.source()->dim() - rank(m);
}

/// true iff f . star_source = star_target . f as matrices.
template <typename K>
bool check_involutive_map(const GradedMap<K>& f)
{
    return compose(f, GradedMap<K>::star_map(f.source())) ==
           compose(GradedMap<K>::star_map(f.target()), f);
}

enum class SignMode { koszul, plain };

/// Tensor product space; basis order index = i * dim(B) + j. The star of a
/// mixed product is a map A (x) B -> B (x) A rather than an endomorphism, so
/// no involution is installed here; contexts that need one (word spaces,
/// pair spaces) build it themselves.
template <typename K>
SpacePtr<K> tensor_space(const SpacePtr<K>& a, const SpacePtr<K>& b)
{
    std::vector<std::string> names;
    std::vector<int> degrees;
    names.reserve(a->dim() * b->dim());
    for (int i = 0; i < a->dim(); ++i)
        for (int j = 0; j < b->dim(); ++j) {
            names.push_back(a->name(i) + "(x)" + b->name(j));
            degrees.push_back(a->degree(i) + b->degree(j));
        }
    return std::make_shared<GradedSpace<K>>(a->label() + "(x)" + b->label(), std::move(names),
                                            std::move(degrees));
}

/// f (x) g on the declared tensor product spaces. Koszul mode inserts
/// (-1)^{|g| |x|} when g passes a homogeneous x; plain mode inserts nothing.
template <typename K>
GradedMap<K> tensor_maps(const GradedMap<K>& f, const GradedMap<K>& g, SignMode mode,
                         const SpacePtr<K>& source_product, const SpacePtr<K>& target_product)
{
    const int bs = g.source()->dim();
    const int bt = g.target()->dim();
    if (source_product->dim() != f.source()->dim() * bs ||
        target_product->dim() != f.target()->dim() * bt)
        throw Error("tensor_maps: product spaces do not match factor dimensions");
    GradedMap<K> out(source_product, target_product, f.degree() + g.degree());
    const bool odd_g = (g.degree() % 2) != 0;
    for (int i = 0; i < f.source()->dim(); ++i) {
        K sign = K(1);
        if (mode == SignMode::koszul && odd_g && (f.source()->degree(i) % 2 != 0))
            sign = K(-1);
        for (int j = 0; j < bs; ++j) {
            for (const auto& [fi, fv] : f.column(i))
                for (const auto& [gj, gv] : g.column(j))
                    out.add_entry(i * bs + j, fi * bt + gj, sign * fv * gv);
        }
    }
    return out;
}

} // namespace ainfty

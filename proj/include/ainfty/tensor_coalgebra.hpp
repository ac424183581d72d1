// Truncated cotensor coalgebra on a suspended graded space: words, the
// deconcatenation coproduct, the reversal involution, and coderivations
// extended from cogenerating components.
#pragma once

#include <map>
#include <unordered_map>
#include <vector>

#include "ainfty/graded_space.hpp"

namespace ainfty {

using Word = std::vector<int>;

struct WordHash {
    std::size_t operator()(const Word& w) const
    {
        std::size_t h = 0x9e3779b97f4a7c15ull;
        for (int x : w)
            h = (h ^ static_cast<std::size_t>(x)) * 0x100000001b3ull;
        return h;
    }
};

/// Sparse multilinear components indexed by arity: arity k maps k-letter
/// words to combinations of letters. Houses m_n / b_n / f_n structure
/// constants throughout.
template <typename K>
using Components = std::unordered_map<Word, SparseRow<K>, WordHash>;

template <typename K>
struct Coderivation {
    int degree{-1};
    std::map<int, Components<K>> by_arity; // arity >= 1

    const SparseRow<K>* entry(int arity, const Word& w) const
    {
        auto a = by_arity.find(arity);
        if (a == by_arity.end())
            return nullptr;
        auto it = a->second.find(w);
        return it == a->second.end() ? nullptr : &it->second;
    }
};

/// All words of weight 0..L over a generator basis, as a graded space whose
/// involution is letterwise star with reversal.
template <typename K>
class TensorCoalgebra {
public:
    TensorCoalgebra(SpacePtr<K> letters, int max_weight)
        : letters_(std::move(letters)), max_weight_(max_weight)
    {
        if (max_weight_ < 0)
            throw Error("weight cap must be non-negative");
        Word w;
        emit_words(w);
        std::vector<std::string> names;
        std::vector<int> degrees;
        names.reserve(words_.size());
        for (std::size_t i = 0; i < words_.size(); ++i) {
            index_.emplace(words_[i], static_cast<int>(i));
            names.push_back(word_name(words_[i]));
            degrees.push_back(word_degree(words_[i]));
        }
        auto sp = std::make_shared<GradedSpace<K>>("T(" + letters_->label() + ")<=" +
                                                       std::to_string(max_weight_),
                                                   std::move(names), std::move(degrees));
        std::vector<SparseRow<K>> star(sp->dim());
        for (int i = 0; i < sp->dim(); ++i)
            star[i] = word_star(words_[i]);
        sp->set_involution(std::move(star));
        space_ = std::move(sp);
    }

    const SpacePtr<K>& letters() const { return letters_; }
    int max_weight() const { return max_weight_; }
    const SpacePtr<K>& space() const { return space_; }
    int word_count() const { return static_cast<int>(words_.size()); }
    const Word& word(int i) const { return words_[i]; }

    int index_of(const Word& w) const
    {
        auto it = index_.find(w);
        if (it == index_.end())
            throw Error("word of weight " + std::to_string(w.size()) +
                        " exceeds the weight cap " + std::to_string(max_weight_));
        return it->second;
    }

    int word_degree(const Word& w) const
    {
        int d = 0;
        for (int x : w)
            d += letters_->degree(x);
        return d;
    }

    std::string word_name(const Word& w) const
    {
        if (w.empty())
            return "1";
        std::string s = "(";
        for (std::size_t i = 0; i < w.size(); ++i) {
            if (i)
                s += "|";
            s += letters_->name(w[i]);
        }
        return s + ")";
    }

    /// Letterwise star with reversal, carrying the Koszul sign of the
    /// reversal in suspended degrees plus the length parity:
    ///   (sa_1 ... sa_n)* = (-1)^{n + sum_{i<j}|sa_i||sa_j|} sa_n* ... sa_1*.
    /// This is the unique sign (up to degree >= 3 letter twists) for which
    /// the involution commutes with every extended coderivation whose
    /// components are involutive; the sign-free version fails on weight-3
    /// palindromic words.
    SparseRow<K> word_star(const Word& w) const
    {
        long long expo = w.empty() ? 0 : static_cast<long long>(w.size());
        for (std::size_t i = 0; i < w.size(); ++i)
            for (std::size_t j = i + 1; j < w.size(); ++j)
                expo += static_cast<long long>(letters_->degree(w[i])) * letters_->degree(w[j]);
        SparseRow<K> acc{{index_of(Word{}), (expo % 2 != 0) ? K(-1) : K(1)}};
        // build the reversed starred word letter by letter
        for (auto it = w.rbegin(); it != w.rend(); ++it) {
            SparseRow<K> next;
            for (const auto& [wi, c] : acc) {
                for (const auto& [li, lv] : letters_->star(*it)) {
                    Word v = words_[wi];
                    v.push_back(li);
                    next = sparse_axpy(next, K(1), SparseRow<K>{{index_of(v), c * lv}});
                }
            }
            acc = std::move(next);
        }
        return acc;
    }

    // --- tensor square, built on demand -----------------------------------

    /// Pairs of words with total weight <= L; hosts the coproduct target.
    const SpacePtr<K>& pair_space() const
    {
        build_pairs();
        return pair_space_;
    }

    int pair_index(int w1, int w2) const
    {
        build_pairs();
        auto it = pair_index_.find({w1, w2});
        if (it == pair_index_.end())
            throw Error("word pair exceeds the weight cap");
        return it->second;
    }

    /// Delta(a_1...a_n) = sum_i (a_1...a_i) (x) (a_{i+1}...a_n).
    GradedMap<K> coproduct() const
    {
        build_pairs();
        GradedMap<K> d(space_, pair_space_, 0);
        for (std::size_t i = 0; i < words_.size(); ++i) {
            const Word& w = words_[i];
            for (std::size_t cut = 0; cut <= w.size(); ++cut) {
                Word left(w.begin(), w.begin() + cut), right(w.begin() + cut, w.end());
                d.add_entry(static_cast<int>(i), pair_index(index_of(left), index_of(right)),
                            K(1));
            }
        }
        return d;
    }

    /// Counit: projection onto the weight-0 component.
    GradedMap<K> counit(const SpacePtr<K>& ground) const
    {
        GradedMap<K> e(space_, ground, 0);
        e.add_entry(index_of(Word{}), 0, K(1));
        return e;
    }

private:
    // canonical order: by weight, then lexicographically; witnesses are
    // reported as the first failing word in this order
    void emit_words(Word& w)
    {
        for (int weight = 0; weight <= max_weight_; ++weight)
            emit_level(w, weight);
    }
    void emit_level(Word& w, int remaining)
    {
        if (remaining == 0) {
            words_.push_back(w);
            return;
        }
        for (int l = 0; l < letters_->dim(); ++l) {
            w.push_back(l);
            emit_level(w, remaining - 1);
            w.pop_back();
        }
    }

    struct PairHash {
        std::size_t operator()(const std::pair<int, int>& p) const
        {
            return std::hash<long long>()((static_cast<long long>(p.first) << 32) ^ p.second);
        }
    };

    void build_pairs() const
    {
        if (pair_space_)
            return;
        std::vector<std::string> names;
        std::vector<int> degrees;
        std::vector<std::pair<int, int>> pairs;
        for (std::size_t i = 0; i < words_.size(); ++i)
            for (std::size_t j = 0; j < words_.size(); ++j) {
                if (words_[i].size() + words_[j].size() > static_cast<std::size_t>(max_weight_))
                    continue;
                pair_index_.emplace(std::make_pair(static_cast<int>(i), static_cast<int>(j)),
                                    static_cast<int>(pairs.size()));
                pairs.emplace_back(static_cast<int>(i), static_cast<int>(j));
                names.push_back(word_name(words_[i]) + "(x)" + word_name(words_[j]));
                degrees.push_back(word_degree(words_[i]) + word_degree(words_[j]));
            }
        auto sp = std::make_shared<GradedSpace<K>>("T(x)T", std::move(names), std::move(degrees));
        // (x (x) y)* = (-1)^{|x||y|} y* (x) x*
        std::vector<SparseRow<K>> star(sp->dim());
        for (std::size_t p = 0; p < pairs.size(); ++p) {
            SparseRow<K> img;
            long long cross = static_cast<long long>(word_degree(words_[pairs[p].first])) *
                              word_degree(words_[pairs[p].second]);
            K swap_sign = (cross % 2 != 0) ? K(-1) : K(1);
            for (const auto& [j2, c2] : word_star(words_[pairs[p].second]))
                for (const auto& [i2, c1] : word_star(words_[pairs[p].first]))
                    img = sparse_axpy(img, swap_sign,
                                      SparseRow<K>{{pair_index_.at({j2, i2}), K(c1 * c2)}});
            star[p] = std::move(img);
        }
        sp->set_involution(std::move(star));
        pair_space_ = std::move(sp);
        pair_list_ = std::move(pairs);
    }

    SpacePtr<K> letters_;
    int max_weight_;
    SpacePtr<K> space_;
    std::vector<Word> words_;
    std::unordered_map<Word, int, WordHash> index_;
    mutable SpacePtr<K> pair_space_;
    mutable std::unordered_map<std::pair<int, int>, int, PairHash> pair_index_;
    mutable std::vector<std::pair<int, int>> pair_list_;
};

/// Extends cogenerating components to the coderivation on the truncated
/// coalgebra: insert each component at every position, with the Koszul sign
/// of the operator passing the prefix. Weight never increases, so the
/// truncation is a subcomplex.
template <typename K>
GradedMap<K> extend_coderivation(const Coderivation<K>& coder, const TensorCoalgebra<K>& c)
{
    GradedMap<K> out(c.space(), c.space(), coder.degree);
    const bool odd = (coder.degree % 2) != 0;
    for (int wi = 0; wi < c.word_count(); ++wi) {
        const Word& w = c.word(wi);
        const int n = static_cast<int>(w.size());
        int prefix_deg = 0;
        for (int i = 0; i < n; ++i) {
            for (const auto& [k, comps] : coder.by_arity) {
                if (i + k > n)
                    continue;
                Word block(w.begin() + i, w.begin() + i + k);
                auto it = comps.find(block);
                if (it == comps.end())
                    continue;
                K sign = (odd && (prefix_deg % 2 != 0)) ? K(-1) : K(1);
                for (const auto& [letter, v] : it->second) {
                    Word img(w.begin(), w.begin() + i);
                    img.push_back(letter);
                    img.insert(img.end(), w.begin() + i + k, w.end());
                    out.add_entry(wi, c.index_of(img), sign * v);
                }
            }
            prefix_deg += c.letters()->degree(w[i]);
        }
    }
    return out;
}

/// true iff Delta . L = (L (x) Id + Id (x) L) . Delta on every basis word
/// (Koszul evaluation).
template <typename K>
bool co_leibniz_check(const GradedMap<K>& lmap, const TensorCoalgebra<K>& c)
{
    const bool odd = (lmap.degree() % 2) != 0;
    GradedMap<K> delta = c.coproduct();
    for (int wi = 0; wi < c.word_count(); ++wi) {
        SparseRow<K> lhs = delta.apply(lmap.column(wi));
        SparseRow<K> rhs;
        const Word& w = c.word(wi);
        for (std::size_t cut = 0; cut <= w.size(); ++cut) {
            Word left(w.begin(), w.begin() + cut), right(w.begin() + cut, w.end());
            int li = c.index_of(left), ri = c.index_of(right);
            for (const auto& [img, v] : lmap.column(li)) // L (x) Id
                rhs = sparse_axpy(rhs, v, SparseRow<K>{{c.pair_index(img, ri), K(1)}});
            K sign = (odd && (c.word_degree(left) % 2 != 0)) ? K(-1) : K(1);
            for (const auto& [img, v] : lmap.column(ri)) // Id (x) L
                rhs = sparse_axpy(rhs, K(sign * v), SparseRow<K>{{c.pair_index(li, img), K(1)}});
        }
        if (lhs != rhs)
            return false;
    }
    return true;
}

/// Arity-n components of b . b (corestriction to the generators); all zero
/// iff the extended map squares to zero on the truncation.
template <typename K>
std::map<int, Components<K>> coderivation_square_components(const Coderivation<K>& coder,
                                                            const TensorCoalgebra<K>& c)
{
    GradedMap<K> b = extend_coderivation(coder, c);
    GradedMap<K> bb = compose(b, b);
    std::map<int, Components<K>> out;
    for (int wi = 0; wi < c.word_count(); ++wi) {
        const Word& w = c.word(wi);
        if (w.empty())
            continue;
        SparseRow<K> letters;
        for (const auto& [img, v] : bb.column(wi)) {
            const Word& iw = c.word(img);
            if (iw.size() == 1)
                letters.emplace_back(iw[0], v);
        }
        if (!letters.empty()) {
            std::sort(letters.begin(), letters.end());
            out[static_cast<int>(w.size())].emplace(w, std::move(letters));
        }
    }
    return out;
}

/// Morphism of truncated coalgebras from components f_k (degree 0): sum over
/// ordered partitions of the word into component blocks.
template <typename K>
GradedMap<K> extend_coalgebra_morphism(const std::map<int, Components<K>>& comps,
                                       const TensorCoalgebra<K>& src,
                                       const TensorCoalgebra<K>& dst)
{
    GradedMap<K> out(src.space(), dst.space(), 0);
    for (int wi = 0; wi < src.word_count(); ++wi) {
        const Word& w = src.word(wi);
        // consume w from the left in component-sized blocks
        std::vector<std::pair<std::size_t, std::pair<Word, K>>> frontier{
            {0, {Word{}, K(1)}}};
        while (!frontier.empty()) {
            auto [pos, wk] = frontier.back();
            frontier.pop_back();
            if (pos == w.size()) {
                out.add_entry(wi, dst.index_of(wk.first), wk.second);
                continue;
            }
            for (const auto& [k, cmap] : comps) {
                if (pos + k > w.size())
                    continue;
                Word block(w.begin() + pos, w.begin() + pos + k);
                auto it = cmap.find(block);
                if (it == cmap.end())
                    continue;
                for (const auto& [letter, v] : it->second) {
                    Word img = wk.first;
                    img.push_back(letter);
                    frontier.push_back({pos + k, {std::move(img), wk.second * v}});
                }
            }
        }
    }
    return out;
}

/// true iff Delta_D . f = (f (x) f) . Delta_C and f commutes with the stars,
/// on all words of the truncations.
template <typename K>
bool coalgebra_morphism_check(const GradedMap<K>& f, const TensorCoalgebra<K>& src,
                              const TensorCoalgebra<K>& dst)
{
    if (!check_involutive_map(f))
        return false;
    GradedMap<K> delta_d = dst.coproduct();
    for (int wi = 0; wi < src.word_count(); ++wi) {
        SparseRow<K> lhs = delta_d.apply(f.column(wi));
        SparseRow<K> rhs;
        const Word& w = src.word(wi);
        for (std::size_t cut = 0; cut <= w.size(); ++cut) {
            Word left(w.begin(), w.begin() + cut), right(w.begin() + cut, w.end());
            for (const auto& [fl, vl] : f.column(src.index_of(left)))
                for (const auto& [fr, vr] : f.column(src.index_of(right)))
                    rhs = sparse_axpy(rhs, K(vl * vr),
                                      SparseRow<K>{{dst.pair_index(fl, fr), K(1)}});
        }
        if (lhs != rhs)
            return false;
    }
    return true;
}

} // namespace ainfty

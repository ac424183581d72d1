// Involutive A-infinity bimodules by components b^M_{p,q}, the induced
// differential on the truncated Bar(A)-bicomodule, and checks.
#pragma once

#include "ainfty/ainfty_morphism.hpp"
#include "ainfty/bicomodule.hpp"

namespace ainfty {

/// Basis element of (SA)^{(x)p} (x) SM (x) (SA)^{(x)q}.
struct BarKey {
    Word left;
    int slot{0};
    Word right;
    bool operator==(const BarKey&) const = default;
};

struct BarKeyHash {
    std::size_t operator()(const BarKey& k) const
    {
        WordHash wh;
        std::size_t h = wh(k.left) * 0x9e3779b97f4a7c15ull + static_cast<std::size_t>(k.slot);
        return h ^ (wh(k.right) + 0x9e3779b9u + (h << 6));
    }
};

/// Words with a module slot, weight p+q <= L, ordered by (weight, p, left
/// word, slot, right word): witnesses are the first failing element here.
template <typename K>
class BarWordSpace {
public:
    BarWordSpace(SpacePtr<K> letters, SpacePtr<K> slot, int max_weight)
        : letters_(std::move(letters)), slot_(std::move(slot)), max_weight_(max_weight)
    {
        for (int w = 0; w <= max_weight_; ++w)
            for (int p = w; p >= 0; --p) {
                std::vector<Word> lefts = words_of(p), rights = words_of(w - p);
                for (const Word& l : lefts)
                    for (int u = 0; u < slot_->dim(); ++u)
                        for (const Word& r : rights) {
                            index_.emplace(BarKey{l, u, r}, static_cast<int>(keys_.size()));
                            keys_.push_back(BarKey{l, u, r});
                        }
            }
        std::vector<std::string> names;
        std::vector<int> degrees;
        for (const auto& k : keys_) {
            names.push_back(key_name(k));
            degrees.push_back(key_degree(k));
        }
        auto sp = std::make_shared<GradedSpace<K>>(
            "Bar(" + slot_->label() + ")<=" + std::to_string(max_weight_), std::move(names),
            std::move(degrees));
        std::vector<SparseRow<K>> star(sp->dim());
        for (int i = 0; i < sp->dim(); ++i)
            star[i] = bar_star(keys_[i]);
        sp->set_involution(std::move(star));
        space_ = std::move(sp);
    }

    const SpacePtr<K>& letters() const { return letters_; }
    const SpacePtr<K>& slot_space() const { return slot_; }
    const SpacePtr<K>& space() const { return space_; }
    int max_weight() const { return max_weight_; }
    int size() const { return static_cast<int>(keys_.size()); }
    const BarKey& key(int i) const { return keys_[i]; }

    int index_of(const BarKey& k) const
    {
        auto it = index_.find(k);
        if (it == index_.end())
            throw Error("bar word exceeds the weight cap " + std::to_string(max_weight_));
        return it->second;
    }

    int key_degree(const BarKey& k) const
    {
        int d = slot_->degree(k.slot);
        for (int x : k.left)
            d += letters_->degree(x);
        for (int x : k.right)
            d += letters_->degree(x);
        return d;
    }

    std::string key_name(const BarKey& k) const
    {
        std::string s = "(";
        for (int x : k.left)
            s += letters_->name(x) + "|";
        s += "[" + slot_->name(k.slot) + "]";
        for (int x : k.right)
            s += "|" + letters_->name(x);
        return s + ")";
    }

    /// Koszul reversal with letterwise stars, the module slot treated as a
    /// letter: sign (-1)^{N + sum_{i<j} d_i d_j} over all N = p+1+q slots.
    SparseRow<K> bar_star(const BarKey& k) const
    {
        std::vector<int> degs;
        for (int x : k.left)
            degs.push_back(letters_->degree(x));
        degs.push_back(slot_->degree(k.slot));
        for (int x : k.right)
            degs.push_back(letters_->degree(x));
        long long expo = static_cast<long long>(degs.size());
        for (std::size_t i = 0; i < degs.size(); ++i)
            for (std::size_t j = i + 1; j < degs.size(); ++j)
                expo += static_cast<long long>(degs[i]) * degs[j];
        K sign = (expo % 2 != 0) ? K(-1) : K(1);

        // reversed starred letters; slot star may be a combination
        std::vector<std::pair<Word, K>> lefts{{Word{}, K(1)}}, rights{{Word{}, K(1)}};
        for (auto it = k.right.rbegin(); it != k.right.rend(); ++it)
            lefts = star_append(lefts, *it);
        for (auto it = k.left.rbegin(); it != k.left.rend(); ++it)
            rights = star_append(rights, *it);
        SparseRow<K> out;
        for (const auto& [lw, lc] : lefts)
            for (const auto& [us, uc] : slot_->star(k.slot))
                for (const auto& [rw, rc] : rights)
                    out = sparse_axpy(out, K(sign * lc * uc * rc),
                                      SparseRow<K>{{index_of(BarKey{lw, us, rw}), K(1)}});
        return out;
    }

private:
    std::vector<Word> words_of(int len) const
    {
        std::vector<Word> out;
        Word w;
        emit(w, len, out);
        return out;
    }
    void emit(Word& w, int remaining, std::vector<Word>& out) const
    {
        if (remaining == 0) {
            out.push_back(w);
            return;
        }
        for (int l = 0; l < letters_->dim(); ++l) {
            w.push_back(l);
            emit(w, remaining - 1, out);
            w.pop_back();
        }
    }
    std::vector<std::pair<Word, K>> star_append(const std::vector<std::pair<Word, K>>& acc,
                                                int letter) const
    {
        std::vector<std::pair<Word, K>> next;
        for (const auto& [w, c] : acc)
            for (const auto& [li, lv] : letters_->star(letter)) {
                Word v = w;
                v.push_back(li);
                next.push_back({std::move(v), K(c * lv)});
            }
        return next;
    }

    SpacePtr<K> letters_;
    SpacePtr<K> slot_;
    int max_weight_;
    SpacePtr<K> space_;
    std::vector<BarKey> keys_;
    std::unordered_map<BarKey, int, BarKeyHash> index_;
};

template <typename K>
using BimodComponents = std::unordered_map<BarKey, SparseRow<K>, BarKeyHash>;

/// M with involution and components b^M_{p,q} : (SA)^p (x) SM (x) (SA)^q -> SM
/// of degree -1, p+q <= cap. Validity (the square-zero bicomodule
/// differential) is checked by bimodule_check, not assumed.
template <typename K>
struct AInftyBimodule {
    StructurePtr<K> algebra;
    SpacePtr<K> space;     // M
    SpacePtr<K> suspended; // SM
    int cap{3};
    std::map<std::pair<int, int>, BimodComponents<K>> comps;

    AInftyBimodule(StructurePtr<K> a, SpacePtr<K> m, int c,
                   std::map<std::pair<int, int>, BimodComponents<K>> b)
        : algebra(std::move(a)), space(std::move(m)), suspended(suspend_space<K>(space)), cap(c),
          comps(std::move(b))
    {
        const auto& sa = algebra->suspended;
        for (const auto& [pq, cmap] : comps) {
            for (const auto& [key, out] : cmap) {
                if (static_cast<int>(key.left.size()) != pq.first ||
                    static_cast<int>(key.right.size()) != pq.second)
                    throw Error("bimodule component keyed by a word of the wrong shape");
                int in_deg = suspended->degree(key.slot);
                for (int x : key.left)
                    in_deg += sa->degree(x);
                for (int x : key.right)
                    in_deg += sa->degree(x);
                for (const auto& [j, v] : out)
                    if (suspended->degree(j) != in_deg - 1)
                        throw Error("bimodule component at " + std::to_string(pq.first) + "," +
                                    std::to_string(pq.second) + " is not of degree -1");
            }
        }
    }

    const SparseRow<K>* entry(int p, int q, const BarKey& key) const
    {
        auto it = comps.find({p, q});
        if (it == comps.end())
            return nullptr;
        auto e = it->second.find(key);
        return e == it->second.end() ? nullptr : &e->second;
    }
};

/// M = A with b^A_{p,q} = b_{p+1+q}: every letter position of each suspended
/// operation serves once as the module slot.
template <typename K>
AInftyBimodule<K> diagonal_bimodule(const StructurePtr<K>& a)
{
    Coderivation<K> b = suspend_ops(*a);
    std::map<std::pair<int, int>, BimodComponents<K>> comps;
    for (const auto& [n, cmap] : b.by_arity) {
        for (const auto& [w, out] : cmap) {
            for (int p = 0; p < n; ++p) {
                BarKey key{Word(w.begin(), w.begin() + p), w[p],
                           Word(w.begin() + p + 1, w.end())};
                auto& dst = comps[{p, n - 1 - p}][key];
                dst = sparse_axpy(dst, K(1), out);
            }
        }
    }
    return AInftyBimodule<K>(a, a->space, std::max(0, a->arity_cap - 1), std::move(comps));
}

/// The bicomodule differential on Bar(A) (x) SM (x) Bar(A), truncated:
/// algebra insertions in both words plus module absorptions, with Koszul
/// signs over everything to the left of the operator.
template <typename K>
GradedMap<K> extend_bimodule_differential(const AInftyBimodule<K>& m, const BarWordSpace<K>& bar)
{
    Coderivation<K> alg = suspend_ops(*m.algebra);
    GradedMap<K> out(bar.space(), bar.space(), -1);
    const auto& sa = m.algebra->suspended;
    for (int bi = 0; bi < bar.size(); ++bi) {
        const BarKey& k = bar.key(bi);
        const int p = static_cast<int>(k.left.size());
        const int q = static_cast<int>(k.right.size());
        // (a) algebra insertions in the left word
        {
            int prefix = 0;
            for (int i = 0; i < p; ++i) {
                for (const auto& [arity, cmap] : alg.by_arity) {
                    if (i + arity > p)
                        continue;
                    Word block(k.left.begin() + i, k.left.begin() + i + arity);
                    auto it = cmap.find(block);
                    if (it == cmap.end())
                        continue;
                    K sign = (prefix % 2 != 0) ? K(-1) : K(1);
                    for (const auto& [letter, v] : it->second) {
                        BarKey img = k;
                        img.left.erase(img.left.begin() + i, img.left.begin() + i + arity);
                        img.left.insert(img.left.begin() + i, letter);
                        out.add_entry(bi, bar.index_of(img), sign * v);
                    }
                }
                prefix += sa->degree(k.left[i]);
            }
        }
        int left_deg = 0;
        for (int x : k.left)
            left_deg += sa->degree(x);
        const int slot_deg = m.suspended->degree(k.slot);
        // (b) module absorptions b^M_{p',q'} on the inner block
        for (int pp = 0; pp <= p; ++pp) {
            int outer = 0; // degree of the untouched left prefix
            for (int t = 0; t < p - pp; ++t)
                outer += sa->degree(k.left[t]);
            for (int qq = 0; qq <= q; ++qq) {
                BarKey inner{Word(k.left.end() - pp, k.left.end()), k.slot,
                             Word(k.right.begin(), k.right.begin() + qq)};
                const SparseRow<K>* comp = m.entry(pp, qq, inner);
                if (!comp)
                    continue;
                K sign = (outer % 2 != 0) ? K(-1) : K(1);
                for (const auto& [slot2, v] : *comp) {
                    BarKey img{Word(k.left.begin(), k.left.end() - pp), slot2,
                               Word(k.right.begin() + qq, k.right.end())};
                    out.add_entry(bi, bar.index_of(img), sign * v);
                }
            }
        }
        // (c) algebra insertions in the right word
        {
            int prefix = left_deg + slot_deg;
            for (int i = 0; i < q; ++i) {
                for (const auto& [arity, cmap] : alg.by_arity) {
                    if (i + arity > q)
                        continue;
                    Word block(k.right.begin() + i, k.right.begin() + i + arity);
                    auto it = cmap.find(block);
                    if (it == cmap.end())
                        continue;
                    K sign = (prefix % 2 != 0) ? K(-1) : K(1);
                    for (const auto& [letter, v] : it->second) {
                        BarKey img = k;
                        img.right.erase(img.right.begin() + i, img.right.begin() + i + arity);
                        img.right.insert(img.right.begin() + i, letter);
                        out.add_entry(bi, bar.index_of(img), sign * v);
                    }
                }
                prefix += sa->degree(k.right[i]);
            }
        }
    }
    return out;
}

/// Coactions split the outer words; the bicomodule view of Bar(M).
template <typename K>
Bicomodule<K> bar_bicomodule(const AInftyBimodule<K>& m, int max_weight)
{
    Bicomodule<K> out;
    out.coalgebra = std::make_shared<TensorCoalgebra<K>>(m.algebra->suspended, max_weight);
    BarWordSpace<K> bar(m.algebra->suspended, m.suspended, max_weight);
    out.carrier = bar.space();
    out.cp = tensor_space(out.coalgebra->space(), out.carrier);
    out.pc = tensor_space(out.carrier, out.coalgebra->space());
    GradedMap<K> dl(out.carrier, out.cp, 0), dr(out.carrier, out.pc, 0);
    const int np = out.carrier->dim();
    const int nc = out.coalgebra->space()->dim();
    for (int i = 0; i < bar.size(); ++i) {
        const BarKey& k = bar.key(i);
        for (std::size_t cut = 0; cut <= k.left.size(); ++cut) {
            Word head(k.left.begin(), k.left.begin() + cut), tail(k.left.begin() + cut, k.left.end());
            dl.add_entry(i, out.coalgebra->index_of(head) * np +
                                bar.index_of(BarKey{tail, k.slot, k.right}),
                         K(1));
        }
        for (std::size_t cut = 0; cut <= k.right.size(); ++cut) {
            Word head(k.right.begin(), k.right.begin() + cut),
                tail(k.right.begin() + cut, k.right.end());
            dr.add_entry(i, bar.index_of(BarKey{k.left, k.slot, head}) * nc +
                                out.coalgebra->index_of(tail),
                         K(1));
        }
    }
    out.left_coaction = std::move(dl);
    out.right_coaction = std::move(dr);
    return out;
}

struct BimoduleReport {
    bool square_zero{false};
    std::string square_witness;
    bool involution_ok{false};
    std::string involution_witness;
    BicomoduleReport bicomodule;
    bool all() const { return square_zero && involution_ok && bicomodule.all(); }
};

/// Builds the induced differential at weight <= L, verifies square-zero and
/// involution compatibility; the coaction diagrams run at a smaller weight
/// (they involve triple tensor products of the truncation).
template <typename K>
BimoduleReport bimodule_check(const AInftyBimodule<K>& m, int max_weight, int diagram_weight = 2)
{
    BimoduleReport rep;
    BarWordSpace<K> bar(m.algebra->suspended, m.suspended, max_weight);
    GradedMap<K> d = extend_bimodule_differential(m, bar);
    GradedMap<K> dd = compose(d, d);
    int col = dd.first_nonzero_column();
    rep.square_zero = col < 0;
    if (col >= 0)
        rep.square_witness = bar.space()->name(col);
    GradedMap<K> star = GradedMap<K>::star_map(bar.space());
    GradedMap<K> defect = compose(d, star) - compose(star, d);
    col = defect.first_nonzero_column();
    rep.involution_ok = col < 0;
    if (col >= 0)
        rep.involution_witness = bar.space()->name(col);
    rep.bicomodule = bicomodule_check(bar_bicomodule(m, std::min(max_weight, diagram_weight)));
    return rep;
}

/// A_2 as an involutive bimodule over A_1 through a morphism f: components
/// b_{p,q} = sum b^{A2}_{r+1+s} . (f_{i_1} (x) ... (x) Id (x) ... (x) f_{j_s}).
template <typename K>
AInftyBimodule<K> induced_bimodule(const AInftyMorphism<K>& f)
{
    const auto& a1 = f.source;
    const auto& a2 = f.target;
    Coderivation<K> b2 = suspend_ops(*a2);
    const int cap = std::max(0, a1->arity_cap - 1);
    std::map<std::pair<int, int>, BimodComponents<K>> comps;

    // all images of a word under ordered partitions into f-components
    auto partition_images = [&](const Word& w) {
        std::vector<std::pair<Word, K>> done;
        std::vector<std::pair<std::size_t, std::pair<Word, K>>> frontier{{0, {Word{}, K(1)}}};
        while (!frontier.empty()) {
            auto [pos, mk] = frontier.back();
            frontier.pop_back();
            if (pos == w.size()) {
                done.push_back(mk);
                continue;
            }
            for (const auto& [k, cmap] : f.comps) {
                if (pos + k > w.size())
                    continue;
                Word block(w.begin() + pos, w.begin() + pos + k);
                auto it = cmap.find(block);
                if (it == cmap.end())
                    continue;
                for (const auto& [letter, v] : it->second) {
                    Word img = mk.first;
                    img.push_back(letter);
                    frontier.push_back({pos + k, {std::move(img), K(mk.second * v)}});
                }
            }
        }
        return done;
    };

    const int nl = a1->suspended->dim();
    auto all_words = [&](int len) {
        std::vector<Word> out{{Word{}}};
        for (int step = 0; step < len; ++step) {
            std::vector<Word> next;
            for (const Word& w : out)
                for (int l = 0; l < nl; ++l) {
                    Word v = w;
                    v.push_back(l);
                    next.push_back(std::move(v));
                }
            out = std::move(next);
        }
        return out;
    };
    for (int p = 0; p <= cap; ++p)
        for (int q = 0; p + q <= cap; ++q) {
            std::vector<Word> lefts = all_words(p), rights = all_words(q);
            for (const Word& wl : lefts)
                for (int u = 0; u < a2->suspended->dim(); ++u)
                    for (const Word& wr : rights) {
                        SparseRow<K> total;
                        for (const auto& [li, lc] : partition_images(wl))
                            for (const auto& [ri, rc] : partition_images(wr)) {
                                Word full = li;
                                full.push_back(u);
                                full.insert(full.end(), ri.begin(), ri.end());
                                if (const SparseRow<K>* e =
                                        b2.entry(static_cast<int>(full.size()), full))
                                    total = sparse_axpy(total, K(lc * rc), *e);
                            }
                        if (!total.empty())
                            comps[{p, q}].emplace(BarKey{wl, u, wr}, std::move(total));
                    }
        }
    return AInftyBimodule<K>(a1, a2->space, cap, std::move(comps));
}

} // namespace ainfty

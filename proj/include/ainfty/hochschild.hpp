// Involutive Hochschild chains and cochains on truncated windows, with the
// classical associative complex as an independent cross-check.
//
// Chain models are the cyclic standard complexes: the small model lives on
// M (x) T(SA) with full wrap-around absorption b^M_{p,q}; the bar-resolution
// model keeps the resolution slot explicit on M (x) T(SA) (x) A (x) T(SA).
// Both verify d^2 = 0 exactly. The involutive variant quotients by the
// module-slot star relation; descent of the differential to that quotient is
// verified and surfaced, never assumed.
#pragma once

#include "ainfty/box_tensor.hpp"
#include "ainfty/chain_complex.hpp"

namespace ainfty {

enum class ChainModel { small, bar_resolution };
enum class StarMode { literal, reversal };

struct HomologyReport {
    std::string model;
    std::map<int, int> ordinary;     // per-degree dims, certified range only
    std::map<int, int> involutive;   // per-degree dims of the quotient model
    bool involutive_defined{false};  // star relation differential descended
    std::string involutive_note;     // witness when not defined
    CertifiedRange certified;
    int max_weight{0};
};

template <typename K>
class HochschildChain {
public:
    HochschildChain(std::shared_ptr<const AInftyBimodule<K>> m, ChainModel model, int max_weight,
                    StarMode star_mode = StarMode::literal)
        : m_(std::move(m)), model_(model), max_weight_(max_weight), star_mode_(star_mode)
    {
        build_basis();
        build_differential();
        verify_square_zero();
        build_quotient();
    }

    const SpacePtr<K>& space() const { return space_; }
    const GradedMap<K>& differential() const { return d_; }
    bool involutive_defined() const { return descends_; }
    const std::string& involutive_note() const { return descent_note_; }

    CertifiedRange certified_range() const
    {
        const auto& a = *m_->algebra;
        int w_min = space_->dim() ? a.suspended->degree(0) : 1;
        for (int i = 0; i < a.suspended->dim(); ++i)
            w_min = std::min(w_min, a.suspended->degree(i));
        int lo = 0, n_min = 0, x_min = 0;
        if (m_->space->dim()) {
            n_min = m_->space->degree(0);
            for (int i = 0; i < m_->space->dim(); ++i)
                n_min = std::min(n_min, m_->space->degree(i));
        }
        if (model_ == ChainModel::bar_resolution && a.space->dim()) {
            x_min = a.space->degree(0);
            for (int i = 0; i < a.space->dim(); ++i)
                x_min = std::min(x_min, a.space->degree(i));
        }
        lo = n_min + x_min;
        if (w_min <= 0)
            return {lo, lo - 1}; // no certification possible
        return {lo, n_min + x_min + max_weight_ * w_min - 1};
    }

    HomologyReport report() const
    {
        HomologyReport rep;
        rep.model = model_ == ChainModel::small ? "small" : "bar-resolution";
        rep.max_weight = max_weight_;
        rep.certified = certified_range();
        rep.ordinary = homology_dims(slice_complex(space_, d_, rep.certified));
        rep.involutive_defined = descends_;
        rep.involutive_note = descent_note_;
        if (descends_)
            rep.involutive = homology_dims(slice_complex(quotient_, d_quot_, rep.certified));
        return rep;
    }

private:
    struct Elt {
        int m;
        Word w;
        int x; // -1 for the small model
        Word w2;
        bool operator==(const Elt&) const = default;
    };

    void build_basis()
    {
        const auto& sa = m_->algebra->suspended;
        std::vector<std::string> names;
        std::vector<int> degrees;
        auto push = [&](int mi, const Word& w, int xi, const Word& w2) {
            index_.emplace(key_of(mi, w, xi, w2), static_cast<int>(basis_.size()));
            basis_.push_back({mi, w, xi, w2});
            std::string nm = "(" + m_->space->name(mi);
            for (int t : w)
                nm += "|" + sa->name(t);
            if (xi >= 0) {
                nm += "|[" + m_->algebra->space->name(xi) + "]";
                for (int t : w2)
                    nm += "|" + sa->name(t);
            }
            nm += ")";
            names.push_back(nm);
            int d = m_->space->degree(mi);
            for (int t : w)
                d += sa->degree(t);
            if (xi >= 0) {
                d += m_->algebra->space->degree(xi);
                for (int t : w2)
                    d += sa->degree(t);
            }
            degrees.push_back(d);
        };
        for (int total = 0; total <= max_weight_; ++total) {
            if (model_ == ChainModel::small) {
                for (const Word& w : words_of(total))
                    for (int mi = 0; mi < m_->space->dim(); ++mi)
                        push(mi, w, -1, {});
            } else {
                for (int k = total; k >= 0; --k)
                    for (const Word& w : words_of(k))
                        for (const Word& w2 : words_of(total - k))
                            for (int mi = 0; mi < m_->space->dim(); ++mi)
                                for (int xi = 0; xi < m_->algebra->space->dim(); ++xi)
                                    push(mi, w, xi, w2);
            }
        }
        space_ = std::make_shared<GradedSpace<K>>(
            std::string(model_ == ChainModel::small ? "C_small" : "C_bar") + "<=" +
                std::to_string(max_weight_),
            std::move(names), std::move(degrees));
    }

    std::vector<Word> words_of(int len) const
    {
        std::vector<Word> out{{Word{}}};
        for (int s = 0; s < len; ++s) {
            std::vector<Word> next;
            for (const Word& w : out)
                for (int l = 0; l < m_->algebra->suspended->dim(); ++l) {
                    Word v = w;
                    v.push_back(l);
                    next.push_back(std::move(v));
                }
            out = std::move(next);
        }
        return out;
    }

    std::string key_of(int mi, const Word& w, int xi, const Word& w2) const
    {
        std::string s = std::to_string(mi) + ":";
        for (int t : w)
            s += std::to_string(t) + ",";
        s += ";" + std::to_string(xi) + ":";
        for (int t : w2)
            s += std::to_string(t) + ",";
        return s;
    }

    int index_of(int mi, const Word& w, int xi, const Word& w2) const
    {
        return index_.at(key_of(mi, w, xi, w2));
    }

    void build_differential()
    {
        const auto& sa = m_->algebra->suspended;
        Coderivation<K> alg = suspend_ops(*m_->algebra);
        AInftyBimodule<K> diag_x = diagonal_bimodule(m_->algebra);
        d_ = GradedMap<K>(space_, space_, -1);
        for (std::size_t bi = 0; bi < basis_.size(); ++bi) {
            const Elt& e = basis_[bi];
            const int k = static_cast<int>(e.w.size());
            const int k2 = static_cast<int>(e.w2.size());
            const int m_deg = m_->suspended->degree(e.m);
            const int x_deg = e.x >= 0 ? m_->algebra->space->degree(e.x) + 1 : 0;
            int w_deg = 0;
            for (int t : e.w)
                w_deg += sa->degree(t);
            int w2_deg = 0;
            for (int t : e.w2)
                w2_deg += sa->degree(t);
            const int total_deg = m_deg + w_deg + x_deg + w2_deg;

            // internal insertions in w
            insert_word(bi, e, /*second=*/false, m_deg, alg);
            if (e.x >= 0) // internal insertions in w2
                insert_word(bi, e, /*second=*/true, m_deg + w_deg + x_deg, alg);

            // M absorbs q letters from the front of w and p letters wrapped
            // from the back (of w2 in the bar model, of w in the small one)
            const Word& back_word = e.x >= 0 ? e.w2 : e.w;
            const int back_len = e.x >= 0 ? k2 : k;
            for (int p = 0; p <= back_len; ++p) {
                int bdeg = 0;
                for (int t = back_len - p; t < back_len; ++t)
                    bdeg += sa->degree(back_word[t]);
                const int front_cap = (e.x >= 0) ? k : k - p;
                for (int q = 0; q <= front_cap; ++q) {
                    BarKey key{Word(back_word.end() - p, back_word.end()), e.m,
                               Word(e.w.begin(), e.w.begin() + q)};
                    const SparseRow<K>* comp = m_->entry(p, q, key);
                    if (!comp)
                        continue;
                    // the back block passes everything that stays before it
                    long long passed = total_deg - bdeg;
                    K sign = (static_cast<long long>(bdeg) * passed % 2 != 0) ? K(-1) : K(1);
                    Word new_w(e.w.begin() + q, e.w.end());
                    Word new_w2 = e.x >= 0 ? Word(e.w2.begin(), e.w2.end() - p) : Word{};
                    if (e.x < 0)
                        new_w = Word(e.w.begin() + q, e.w.end() - p);
                    for (const auto& [m2, c] : *comp)
                        d_.add_entry(static_cast<int>(bi),
                                     index_of(m2, new_w, e.x, new_w2), sign * c);
                }
            }

            // the resolution slot absorbs p letters from the back of w and q
            // letters from the front of w2 through the diagonal components
            if (e.x >= 0) {
                for (int p = 0; p <= k; ++p) {
                    int outer = m_deg;
                    for (int t = 0; t < k - p; ++t)
                        outer += sa->degree(e.w[t]);
                    for (int q = 0; q <= k2; ++q) {
                        BarKey key{Word(e.w.end() - p, e.w.end()), e.x,
                                   Word(e.w2.begin(), e.w2.begin() + q)};
                        const SparseRow<K>* comp = diag_x.entry(p, q, key);
                        if (!comp)
                            continue;
                        K sign = (outer % 2 != 0) ? K(-1) : K(1);
                        Word new_w(e.w.begin(), e.w.end() - p);
                        Word new_w2(e.w2.begin() + q, e.w2.end());
                        for (const auto& [x2, c] : *comp)
                            d_.add_entry(static_cast<int>(bi),
                                         index_of(e.m, new_w, x2, new_w2), sign * c);
                    }
                }
            }
        }
    }

    void insert_word(std::size_t bi, const Elt& e, bool second, int base_deg,
                     const Coderivation<K>& alg)
    {
        const auto& sa = m_->algebra->suspended;
        const Word& w = second ? e.w2 : e.w;
        const int n = static_cast<int>(w.size());
        int prefix = base_deg;
        for (int i = 0; i < n; ++i) {
            for (const auto& [arity, cmap] : alg.by_arity) {
                if (i + arity > n)
                    continue;
                Word block(w.begin() + i, w.begin() + i + arity);
                auto it = cmap.find(block);
                if (it == cmap.end())
                    continue;
                K sign = (prefix % 2 != 0) ? K(-1) : K(1);
                for (const auto& [letter, v] : it->second) {
                    Word img(w.begin(), w.begin() + i);
                    img.push_back(letter);
                    img.insert(img.end(), w.begin() + i + arity, w.end());
                    int idx = second ? index_of(e.m, e.w, e.x, img)
                                     : index_of(e.m, img, e.x, e.w2);
                    d_.add_entry(static_cast<int>(bi), idx, sign * v);
                }
            }
            prefix += sa->degree(w[i]);
        }
    }

    void verify_square_zero()
    {
        GradedMap<K> dd = compose(d_, d_);
        int col = dd.first_nonzero_column();
        if (col >= 0)
            throw Error("Hochschild chain differential does not square to zero at " +
                        space_->name(col));
    }

    /// Star of a basis element under the active mode. literal: star on the
    /// module slot(s) only, word untouched; reversal: full cyclic reversal
    /// with letterwise stars and the Koszul sign.
    SparseRow<K> star_of(int bi) const
    {
        const Elt& e = basis_[bi];
        SparseRow<K> out;
        if (star_mode_ == StarMode::literal) {
            for (const auto& [m2, c] : m_->space->star(e.m))
                out = sparse_axpy(out, c,
                                  SparseRow<K>{{index_of(m2, e.w, e.x, e.w2), K(1)}});
            return out;
        }
        // reversal: (m, w, x, w2) -> (m*, rev* w2, x*, rev* w), slot stays put
        const auto& sa = m_->algebra->suspended;
        std::vector<int> degs{m_->suspended->degree(e.m)};
        for (int t : e.w)
            degs.push_back(sa->degree(t));
        if (e.x >= 0)
            degs.push_back(m_->algebra->space->degree(e.x) + 1);
        for (int t : e.w2)
            degs.push_back(sa->degree(t));
        long long expo = static_cast<long long>(degs.size());
        for (std::size_t i = 0; i < degs.size(); ++i)
            for (std::size_t j = i + 1; j < degs.size(); ++j)
                expo += static_cast<long long>(degs[i]) * degs[j];
        K sign = (expo % 2 != 0) ? K(-1) : K(1);
        auto rev_star = [&](const Word& w) {
            std::vector<std::pair<Word, K>> acc{{Word{}, K(1)}};
            for (auto it = w.rbegin(); it != w.rend(); ++it) {
                std::vector<std::pair<Word, K>> next;
                for (const auto& [v, c] : acc)
                    for (const auto& [li, lv] : sa->star(*it)) {
                        Word u = v;
                        u.push_back(li);
                        next.push_back({std::move(u), K(c * lv)});
                    }
                acc = std::move(next);
            }
            return acc;
        };
        for (const auto& [m2, cm] : m_->space->star(e.m))
            for (const auto& [nw, cw] : rev_star(e.x >= 0 ? e.w2 : e.w)) {
                if (e.x < 0) {
                    out = sparse_axpy(out, K(sign * cm * cw),
                                      SparseRow<K>{{index_of(m2, nw, -1, {}), K(1)}});
                    continue;
                }
                for (const auto& [x2, cx] : m_->algebra->space->star(e.x))
                    for (const auto& [nw2, cw2] : rev_star(e.w))
                        out = sparse_axpy(out, K(sign * cm * cw * cx * cw2),
                                          SparseRow<K>{{index_of(m2, nw, x2, nw2), K(1)}});
            }
        return out;
    }

    void build_quotient()
    {
        const int dim = space_->dim();
        SparseRows<K> relations;
        std::vector<int> rel_source;
        for (int bi = 0; bi < dim; ++bi) {
            SparseRow<K> r = star_of(bi);
            r = sparse_axpy(r, K(-1), SparseRow<K>{{bi, K(1)}});
            if (!r.empty()) {
                relations.push_back(std::move(r));
                rel_source.push_back(bi);
            }
        }
        SparseRows<K> rref_rows = relations;
        std::vector<int> pivots = sparse_rref(rref_rows, dim);
        std::vector<char> is_pivot(dim, 0);
        for (int p : pivots)
            is_pivot[p] = 1;
        std::vector<std::string> names;
        std::vector<int> degrees;
        std::vector<int> class_of(dim, -1);
        std::vector<int> reps;
        for (int i = 0; i < dim; ++i)
            if (!is_pivot[i]) {
                class_of[i] = static_cast<int>(reps.size());
                reps.push_back(i);
                names.push_back(space_->name(i));
                degrees.push_back(space_->degree(i));
            }
        quotient_ = std::make_shared<GradedSpace<K>>(space_->label() + "/star", std::move(names),
                                                     std::move(degrees));
        GradedMap<K> proj(space_, quotient_, 0);
        for (int i = 0; i < dim; ++i) {
            if (!is_pivot[i]) {
                proj.add_entry(i, class_of[i], K(1));
                continue;
            }
            for (std::size_t r = 0; r < pivots.size(); ++r)
                if (pivots[r] == i)
                    for (const auto& [c, v] : rref_rows[r])
                        if (c != i)
                            proj.add_entry(i, class_of[c], K(-v));
        }
        GradedMap<K> incl(quotient_, space_, 0);
        for (std::size_t j = 0; j < reps.size(); ++j)
            incl.add_entry(static_cast<int>(j), reps[j], K(1));

        descends_ = true;
        for (std::size_t r = 0; r < relations.size(); ++r) {
            SparseRow<K> img = d_.apply(relations[r]);
            if (!in_row_span(img, rref_rows, pivots)) {
                descends_ = false;
                descent_note_ = "star relation differential escapes the span at " +
                                space_->name(rel_source[r]);
                break;
            }
        }
        if (descends_)
            d_quot_ = compose(proj, compose(d_, incl));
    }

    std::shared_ptr<const AInftyBimodule<K>> m_;
    ChainModel model_;
    int max_weight_;
    StarMode star_mode_;
    SpacePtr<K> space_;
    std::vector<Elt> basis_;
    std::unordered_map<std::string, int> index_;
    GradedMap<K> d_;
    SpacePtr<K> quotient_;
    GradedMap<K> d_quot_;
    bool descends_{false};
    std::string descent_note_;
};

template <typename K>
HomologyReport hh(const std::shared_ptr<const AInftyBimodule<K>>& m, ChainModel model,
                  int max_weight, StarMode star_mode = StarMode::literal)
{
    return HochschildChain<K>(m, model, max_weight, star_mode).report();
}

struct ModelComparison {
    HomologyReport small;
    HomologyReport bar;
    bool agree{false};
    std::map<int, std::pair<int, int>> disagreements; // degree -> (small, bar)
};

/// The two chain models must give equal dims on shared certified degrees.
template <typename K>
ModelComparison small_model_compare(const std::shared_ptr<const AInftyBimodule<K>>& m,
                                    int max_weight, StarMode star_mode = StarMode::literal)
{
    ModelComparison out;
    out.small = hh(m, ChainModel::small, max_weight, star_mode);
    out.bar = hh(m, ChainModel::bar_resolution, max_weight, star_mode);
    out.agree = true;
    int lo = std::max(out.small.certified.lo, out.bar.certified.lo);
    int hi = std::min(out.small.certified.hi, out.bar.certified.hi);
    for (int n = lo; n <= hi; ++n) {
        int a = out.small.ordinary.count(n) ? out.small.ordinary.at(n) : 0;
        int b = out.bar.ordinary.count(n) ? out.bar.ordinary.at(n) : 0;
        if (a != b) {
            out.agree = false;
            out.disagreements[n] = {a, b};
        }
    }
    return out;
}

// --- cochain model ---------------------------------------------------------

/// Cochain complex in cogenerating form: families g_n : (SA)^n -> SM, n <= L.
/// d(g) = b^M-absorption of the output with the surrounding letters plus
/// precomposition with the bar insertions, with Hom-complex signs.
template <typename K>
class HochschildCochain {
public:
    HochschildCochain(std::shared_ptr<const AInftyBimodule<K>> m, int max_weight,
                      StarMode star_mode = StarMode::literal)
        : m_(std::move(m)), max_weight_(max_weight), star_mode_(star_mode),
          bar_(m_->algebra->suspended, max_weight)
    {
        build();
    }

    const SpacePtr<K>& space() const { return space_; }
    const GradedMap<K>& differential() const { return d_; }
    bool involutive_defined() const { return closed_; }
    const std::string& involutive_note() const { return note_; }

    CertifiedRange certified_range() const
    {
        const auto& a = *m_->algebra;
        int w_min = 1;
        for (int i = 0; i < a.suspended->dim(); ++i)
            w_min = std::min(w_min, a.suspended->degree(i));
        int m_max = 0;
        for (int i = 0; i < m_->space->dim(); ++i)
            m_max = std::max(m_max, m_->space->degree(i));
        int lo = 0;
        for (int i = 0; i < m_->space->dim(); ++i)
            lo = std::min(lo, -m_->space->degree(i));
        if (w_min <= 0)
            return {lo, lo - 1};
        // cochain degree n receives arities up to (n + m_max)/w_min
        return {lo, max_weight_ * w_min - m_max - 1};
    }

    HomologyReport report() const
    {
        HomologyReport rep;
        rep.model = "cochain";
        rep.max_weight = max_weight_;
        rep.certified = certified_range();
        // cochain degree n is stored as internal degree -n
        CertifiedRange internal{-rep.certified.hi, -rep.certified.lo};
        auto dims = homology_dims(slice_complex(space_, d_, internal));
        for (const auto& [n, v] : dims)
            rep.ordinary[-n] = v;
        rep.involutive_defined = closed_;
        rep.involutive_note = note_;
        if (closed_) {
            auto idims = homology_dims(slice_complex(inv_space_, d_inv_, internal));
            for (const auto& [n, v] : idims)
                rep.involutive[-n] = v;
        }
        return rep;
    }

private:
    void build()
    {
        const int nt = m_->suspended->dim();
        const auto& sa = m_->algebra->suspended;
        std::vector<std::string> names;
        std::vector<int> degrees;
        for (int wi = 0; wi < bar_.word_count(); ++wi)
            for (int t = 0; t < nt; ++t) {
                names.push_back(bar_.space()->name(wi) + "=>" + m_->suspended->name(t));
                // internal degree: -(cochain degree) = |m| - sum(|sa_i|)
                degrees.push_back(m_->space->degree(t) - bar_.space()->degree(wi));
            }
        space_ = std::make_shared<GradedSpace<K>>("C^inv<=" + std::to_string(max_weight_),
                                                  std::move(names), std::move(degrees));
        GradedMap<K> b = extend_coderivation(suspend_ops(*m_->algebra), bar_);
        std::vector<SparseRow<K>> b_rows(bar_.word_count());
        for (int i = 0; i < bar_.word_count(); ++i)
            for (const auto& [j, v] : b.column(i))
                b_rows[j].emplace_back(i, v);

        d_ = GradedMap<K>(space_, space_, -1);
        for (int wi = 0; wi < bar_.word_count(); ++wi) {
            const Word& w0 = bar_.word(wi);
            for (int t0 = 0; t0 < nt; ++t0) {
                const int col = wi * nt + t0;
                // the stored degree is shifted for reporting; signs use the
                // true Hom degree of the family
                const int h = m_->suspended->degree(t0) - bar_.space()->degree(wi);
                const K sgn_h = (h % 2 != 0) ? K(-1) : K(1);
                // absorption: surround g's output by (u, v) and apply b^M
                for (const auto& [pq, cmap] : m_->comps) {
                    if (pq.first + pq.second + static_cast<int>(w0.size()) > max_weight_)
                        continue;
                    for (const auto& [key, out] : cmap) {
                        if (key.slot != t0)
                            continue;
                        int udeg = 0;
                        for (int x : key.left)
                            udeg += sa->degree(x);
                        K sign = (h % 2 != 0 && udeg % 2 != 0) ? K(-1) : K(1);
                        Word big = key.left;
                        big.insert(big.end(), w0.begin(), w0.end());
                        big.insert(big.end(), key.right.begin(), key.right.end());
                        int row_word = bar_.index_of(big);
                        for (const auto& [t2, c] : out)
                            d_.add_entry(col, row_word * nt + t2, sign * c);
                    }
                }
                // precomposition with the bar insertions
                for (const auto& [src, c] : b_rows[wi])
                    d_.add_entry(col, src * nt + t0, K(-1) * sgn_h * c);
            }
        }
        GradedMap<K> dd = compose(d_, d_);
        if (int col = dd.first_nonzero_column(); col >= 0)
            throw Error("Hochschild cochain differential does not square to zero at " +
                        space_->name(col));

        // involutive restriction
        GradedMap<K> star(space_, space_, 0);
        if (star_mode_ == StarMode::literal) {
            // slot star only: g -> dagger . g
            for (int wi = 0; wi < bar_.word_count(); ++wi)
                for (int t = 0; t < nt; ++t)
                    for (const auto& [t2, c] : m_->suspended->star(t))
                        star.add_entry(wi * nt + t, wi * nt + t2, c);
        } else {
            // conjugation with the word star: g -> dagger . g . star
            for (int wi = 0; wi < bar_.word_count(); ++wi)
                for (const auto& [wj, c] : bar_.space()->star(wi))
                    for (int t = 0; t < nt; ++t)
                        for (const auto& [t2, cv] : m_->suspended->star(t))
                            star.add_entry(wj * nt + t, wi * nt + t2, c * cv);
        }
        GradedMap<K> defect = compose(d_, star) - compose(star, d_);
        closed_ = defect.is_zero_map();
        if (!closed_) {
            note_ = "involutive family space is not closed under the differential (witness " +
                    space_->name(defect.first_nonzero_column()) + ")";
            return;
        }
        // fixed subspace of the involution: kernel of (star - id)
        GradedMap<K> diff = star - GradedMap<K>::identity(space_);
        SparseRows<K> rows(space_->dim());
        for (int i = 0; i < space_->dim(); ++i)
            for (const auto& [j, v] : diff.column(i))
                rows[j].emplace_back(i, v);
        for (auto& r : rows)
            std::sort(r.begin(), r.end());
        std::vector<SparseRow<K>> fixed = sparse_kernel_basis(std::move(rows), space_->dim());
        std::vector<std::string> inv_names;
        std::vector<int> inv_degrees;
        for (std::size_t i = 0; i < fixed.size(); ++i) {
            inv_names.push_back("inv" + std::to_string(i));
            inv_degrees.push_back(space_->degree(fixed[i].front().first));
        }
        inv_space_ = std::make_shared<GradedSpace<K>>("C^inv-fixed", std::move(inv_names),
                                                      std::move(inv_degrees));
        // express d on the fixed basis: solve through the coordinates
        GradedMap<K> incl(inv_space_, space_, 0);
        for (std::size_t j = 0; j < fixed.size(); ++j)
            for (const auto& [i, v] : fixed[j])
                incl.add_entry(static_cast<int>(j), i, v);
        DenseMatrix<K> basis_mat = incl.dense();
        GradedMap<K> d_incl = compose(d_, incl);
        d_inv_ = GradedMap<K>(inv_space_, inv_space_, -1);
        for (int j = 0; j < inv_space_->dim(); ++j) {
            DenseVector<K> rhs = DenseVector<K>::Zero(space_->dim());
            for (const auto& [i, v] : d_incl.column(j))
                rhs(i) = v;
            auto x = solve(basis_mat, rhs);
            if (!x)
                throw Error("internal: differential image left the involutive subspace");
            for (int i = 0; i < inv_space_->dim(); ++i)
                if (!is_zero((*x)(i)))
                    d_inv_.add_entry(j, i, (*x)(i));
        }
    }

    std::shared_ptr<const AInftyBimodule<K>> m_;
    int max_weight_;
    StarMode star_mode_;
    TensorCoalgebra<K> bar_;
    SpacePtr<K> space_;
    GradedMap<K> d_;
    SpacePtr<K> inv_space_;
    GradedMap<K> d_inv_;
    bool closed_{false};
    std::string note_;
};

template <typename K>
HomologyReport cohh(const std::shared_ptr<const AInftyBimodule<K>>& m, int max_weight,
                    StarMode star_mode = StarMode::literal)
{
    return HochschildCochain<K>(m, max_weight, star_mode).report();
}

// --- classical oracle -------------------------------------------------------

/// Independent classical Hochschild complex for associative algebras
/// concentrated in degree 0: C_n = M (x) A^{(x)n} with the standard face
/// maps, built without any of the coalgebra machinery. Cross-check only.
struct ClassicalOracle {
    std::map<int, int> chain_dims;   // HH_n, 0 <= n <= L-1
    std::map<int, int> cochain_dims; // HH^n, 0 <= n <= L-1
};

template <typename K>
ClassicalOracle classical_oracle(const AInftyStructure<K>& a, int max_weight)
{
    const int n = a.space->dim();
    for (int i = 0; i < n; ++i)
        if (a.space->degree(i) != 0)
            throw Error("classical oracle requires a degree-0 algebra");
    for (const auto& [arity, cmap] : a.ops)
        if (arity != 2)
            throw Error("classical oracle requires a purely associative algebra");
    auto mul = [&](int i, int j) { return a.apply_op(2, Word{i, j}); };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                SparseRow<K> lhs, rhs;
                for (const auto& [t, c] : mul(i, j))
                    lhs = sparse_axpy(lhs, c, mul(t, k));
                for (const auto& [t, c] : mul(j, k))
                    rhs = sparse_axpy(rhs, c, mul(i, t));
                if (lhs != rhs)
                    throw Error("classical oracle: algebra is not associative at (" +
                                a.space->name(i) + "," + a.space->name(j) + "," +
                                a.space->name(k) + ")");
            }

    ClassicalOracle out;
    // chains: C_t = M (x) A^t, M = A; index = m * n^t + word
    auto pow = [&](int e) {
        long long r = 1;
        for (int i = 0; i < e; ++i)
            r *= n;
        return r;
    };
    std::vector<SparseRows<K>> d(max_weight + 1); // d[t]: C_t -> C_{t-1}, rows by target
    for (int t = 1; t <= max_weight; ++t) {
        SparseRows<K> rows(n * pow(t - 1));
        auto add = [&](long long src, long long dst, const K& v) {
            if (!is_zero(v))
                rows[dst].emplace_back(static_cast<int>(src), v);
        };
        std::vector<int> word(t, 0);
        for (long long idx = 0; idx < n * pow(t); ++idx) {
            long long rest = idx;
            int m = static_cast<int>(rest / pow(t));
            rest %= pow(t);
            for (int i = t - 1; i >= 0; --i) {
                word[i] = static_cast<int>(rest % n);
                rest /= n;
            }
            // face 0: m a_1
            for (const auto& [m2, c] : mul(m, word[0])) {
                long long dst = m2 * pow(t - 1);
                for (int i = 1; i < t; ++i)
                    dst = dst + word[i] * pow(t - 1 - i);
                add(idx, dst, c);
            }
            // inner faces
            K sgn = K(1);
            for (int i = 1; i < t; ++i) {
                sgn = -sgn;
                for (const auto& [w2, c] : mul(word[i - 1], word[i])) {
                    long long dst = m * pow(t - 1);
                    int pos = 0;
                    for (int j = 0; j < t; ++j) {
                        if (j == i - 1) {
                            dst += w2 * pow(t - 2 - pos);
                            ++pos;
                            ++j; // skip the absorbed pair
                        } else {
                            dst += word[j] * pow(t - 2 - pos);
                            ++pos;
                        }
                    }
                    add(idx, dst, sgn * c);
                }
            }
            // wrap face: (-1)^t a_t m
            K wrap_sgn = (t % 2 != 0) ? K(-1) : K(1);
            for (const auto& [m2, c] : mul(word[t - 1], m)) {
                long long dst = m2 * pow(t - 1);
                for (int i = 0; i < t - 1; ++i)
                    dst += word[i] * pow(t - 2 - i);
                add(idx, dst, wrap_sgn * c);
            }
        }
        for (auto& r : rows) {
            std::sort(r.begin(), r.end());
            SparseRow<K> merged;
            for (const auto& [cidx, v] : r) {
                if (!merged.empty() && merged.back().first == cidx) {
                    merged.back().second += v;
                    if (is_zero(merged.back().second))
                        merged.pop_back();
                } else {
                    merged.emplace_back(cidx, v);
                }
            }
            r = std::move(merged);
        }
        d[t] = std::move(rows);
    }
    auto rank_of = [&](int t) {
        if (t < 1 || t > max_weight)
            return 0;
        SparseRows<K> rows = d[t];
        return sparse_rank(std::move(rows), static_cast<int>(n * pow(t)));
    };
    for (int t = 0; t < max_weight; ++t) {
        int dim_t = static_cast<int>(n * pow(t));
        int r_t = rank_of(t);     // rank of d_t: C_t -> C_{t-1}
        int r_t1 = rank_of(t + 1);
        out.chain_dims[t] = dim_t - r_t - r_t1;
    }

    // cochains: C^t = Hom(A^t, M): (dg)(a_1..a_{t+1}) = a_1 g(...) +
    // sum (-1)^i g(.. a_i a_{i+1} ..) + (-1)^{t+1} g(a_1..a_t) a_{t+1}
    std::vector<SparseRows<K>> dc(max_weight + 1); // dc[t]: C^{t-1} -> C^t rows by target
    for (int t = 1; t <= max_weight; ++t) {
        SparseRows<K> rows(pow(t) * n); // target: (word of length t, m)
        std::vector<int> word(t, 0);
        for (long long widx = 0; widx < pow(t); ++widx) {
            long long rest = widx;
            for (int i = t - 1; i >= 0; --i) {
                word[i] = static_cast<int>(rest % n);
                rest /= n;
            }
            for (int g_m = 0; g_m < n; ++g_m) {
                // source entry: g = (word', g_m) of length t-1
                // contribution a_1 * g(a_2..a_t)
                {
                    long long wsrc = 0;
                    for (int i = 1; i < t; ++i)
                        wsrc = wsrc * n + word[i];
                    for (const auto& [m2, c] : mul(word[0], g_m))
                        rows[widx * n + m2].emplace_back(static_cast<int>(wsrc * n + g_m), c);
                }
                // inner contractions
                K sgn = K(1);
                for (int i = 1; i < t; ++i) {
                    sgn = -sgn;
                    for (const auto& [w2, c] : mul(word[i - 1], word[i])) {
                        long long wsrc = 0;
                        for (int j = 0; j < t; ++j) {
                            if (j == i - 1) {
                                wsrc = wsrc * n + w2;
                                ++j;
                            } else {
                                wsrc = wsrc * n + word[j];
                            }
                        }
                        rows[widx * n + g_m].emplace_back(static_cast<int>(wsrc * n + g_m),
                                                          sgn * c);
                    }
                }
                // g(a_1..a_{t-1}) * a_t
                K wrap = (t % 2 != 0) ? K(-1) : K(1);
                {
                    long long wsrc = 0;
                    for (int i = 0; i + 1 < t; ++i)
                        wsrc = wsrc * n + word[i];
                    for (const auto& [m2, c] : mul(g_m, word[t - 1]))
                        rows[widx * n + m2].emplace_back(static_cast<int>(wsrc * n + g_m),
                                                         wrap * c);
                }
            }
        }
        for (auto& r : rows) {
            std::sort(r.begin(), r.end());
            // merge duplicate columns
            SparseRow<K> merged;
            for (const auto& [cidx, v] : r) {
                if (!merged.empty() && merged.back().first == cidx) {
                    merged.back().second += v;
                    if (is_zero(merged.back().second))
                        merged.pop_back();
                } else {
                    merged.emplace_back(cidx, v);
                }
            }
            r = std::move(merged);
        }
        dc[t] = std::move(rows);
    }
    auto corank_of = [&](int t) { // rank of d: C^{t-1} -> C^t
        if (t < 1 || t > max_weight)
            return 0;
        SparseRows<K> rows = dc[t];
        return sparse_rank(std::move(rows), static_cast<int>(pow(t - 1) * n));
    };
    for (int t = 0; t < max_weight; ++t) {
        int dim_t = static_cast<int>(pow(t) * n);
        out.cochain_dims[t] = dim_t - corank_of(t) - corank_of(t + 1);
    }
    return out;
}

} // namespace ainfty

#pragma once

#include <optional>

#include "gu2/characters.hpp"
#include "gu2/eigenform_data.hpp"
#include "gu2/elliptic_dims.hpp"
#include "gu2/hecke.hpp"
#include "gu2/parallel.hpp"

// The h = 1 trace formula engine.
//
//   dim A_{j,k-3}(D)   = (1/|Gamma^(2)|) sum_{gamma} chi(gamma)
//   tr T_{u,q}         = (1/|Gamma^(2)|) sum_{gamma, i} chi(u_i gamma)
//   tr T_{u,q}^d       = (1/|Gamma^(2)|) sum_{gamma, (i_1..i_d)}
//                          chi(u_{i_1} ... u_{i_d} gamma)
//
// Because the right cosets u_i Gamma^(2) partition Y_q freely, the d = 1
// double sum is exactly the sum of chi over Y_q; the engine exploits this
// (summing over W_q in the integral model) and keeps the literal
// representative-times-group sum as a cross-check route.  Character input
// is reduced to the integer power-sum pairs (r1, r2), collected once per
// multiset with multiplicities, so a whole (j,k) grid reuses one pass over
// the group.
//
// Oldforms: with m = dim S_{j+2k-2}(SL_2(Z)) and n = dim S_{j+2}^new(Gamma_0(p)),
//
//   tr(T_{u,q})^old = n * (sum_i a_{q,g_i}) + m q^{k-2} (sum_i a_{q,h_i}),
//
// the level-1 sums read from bundled records and the Gamma_0(p)-new sums
// computed on the D^x side (unit group and X_q / O^x representatives).  At
// p = 11 the D^x class number is 2, so n falls back to the classical
// dimension formula; the eigenvalue sum is never needed there (m = 0 in
// every supported case).

namespace gu2 {

// multiset of integer embedding power sums with multiplicities
struct PowerSumMultiset {
    std::map<std::pair<Int, Int>, Int> counts;
    Int total = 0;

    void add(Int r1, Int r2, Int mult = 1) {
        counts[{r1, r2}] += mult;
        total += mult;
    }
    void merge(const PowerSumMultiset& o) {
        for (const auto& [k, c] : o.counts) counts[k] += c;
        total += o.total;
    }
    bool operator==(const PowerSumMultiset& o) const {
        return total == o.total && counts == o.counts;
    }
};

inline PowerSumMultiset collect_power_sums(const MaximalOrder& O,
                                           const std::vector<WMat>& mats,
                                           int threads = 1) {
    auto chunks = parallel_map_chunks<PowerSumMultiset>(
        mats.size(), threads, [&](std::size_t lo, std::size_t hi) {
            PowerSumMultiset ms;
            for (std::size_t i = lo; i < hi; ++i) {
                Int r1, r2;
                wmat_power_sums(O, mats[i], r1, r2);
                ms.add(r1, r2);
            }
            return ms;
        });
    PowerSumMultiset out;
    for (const auto& c : chunks) out.merge(c);
    return out;
}

inline Rational sum_character(const PowerSumMultiset& ms,
                              const Sp4Character& chi, Int theta) {
    Rational acc = 0;
    for (const auto& [rr, count] : ms.counts)
        acc += rat_of(count) *
               chi.eval_power_sums(rat_of(theta), rat_of(rr.first),
                                   rat_of(rr.second));
    return acc;
}

// trace result for one (p, q, j, k): total = old + new, dims likewise
struct TraceResult {
    int p = 0;
    Int q = 0;
    int j = 0, k = 0;
    int power = 1;
    Rational total, old_part, new_part;
    BigInt full_dim = 0, old_dim = 0, new_dim = 0;
    Int m = 0, n = 0;  // oldform multiplicities (level 1 / Gamma_0(p)-new)
    bool j0_empty_old_assumed = false;
};

class TraceEngine {
   public:
    explicit TraceEngine(int p, const std::string& table_path = "",
                         int threads = 1, std::string cache_dir = "")
        : cfg_(load_algebra(p, table_path)),
          G_(make_genus_data(cfg_)),
          cache_(*cfg_.order),
          threads_(threads),
          cache_dir_(std::move(cache_dir)) {}

    int p() const { return cfg_.p; }
    const MaximalOrder& order() const { return *cfg_.order; }
    const GenusData& genus() const { return G_; }
    NormListCache& norm_cache() { return cache_; }
    CharacterTable& characters() { return chars_; }

    const FiniteGroup& gamma2() {
        if (!gamma2_) {
            gamma2_ = gamma2_group_from_w(G_, w_theta(1));
            group_ms_ = collect_power_sums(order(), gamma2_->w_elements,
                                           threads_);
        }
        return *gamma2_;
    }

    const FiniteGroup& gamma1() {
        if (!gamma1_) gamma1_ = gamma1_group(order(), p(), cache_);
        return *gamma1_;
    }

    MassReport mass_report() {
        return mass_check(p(), gamma1().size(), gamma2().size());
    }

    // W_q in the integral model, cached per q (and on disk when enabled)
    const std::vector<WMat>& w_theta(Int q) {
        auto it = wq_.find(q);
        if (it == wq_.end()) {
            std::vector<WMat> w;
            if (!load_cached_w(q, w)) {
                w = compute_W_theta(G_, q, cache_);
                save_cached_w(q, w);
            }
            it = wq_.emplace(q, std::move(w)).first;
        }
        return it->second;
    }

    const HeckeRepSet& reps(Int q) {
        auto it = reps_.find(q);
        if (it == reps_.end()) {
            gamma2();
            it = reps_.emplace(
                           q, hecke_reps_from_Y(G_, *gamma2_, q, w_theta(q)))
                     .first;
            // the coset identity: {u_i gamma} runs over W_q exactly once,
            // so the trace multiset is the W_q multiset itself
            wq_ms_.emplace(q,
                           collect_power_sums(order(), w_theta(q), threads_));
        }
        return it->second;
    }

    // Cor I specialization: dim A_{j,k-3}(D)
    BigInt dim_full(int j, int k) {
        gamma2();
        Rational d = sum_character(group_ms_, chars_.get(j, k), 1) /
                     rat_of(static_cast<Int>(gamma2_->size()));
        BigInt out = to_integer(d);
        GU2_CHECK(out >= 0, "negative dimension");
        return out;
    }

    // tr(T_{u,q}) via the W_q sum
    Rational trace_q(Int q, int j, int k) {
        reps(q);
        return sum_character(wq_ms_.at(q), chars_.get(j, k), q) /
               rat_of(static_cast<Int>(gamma2_->size()));
    }

    // the literal double sum over representatives times group elements;
    // must agree with trace_q exactly
    Rational trace_q_literal(Int q, int j, int k) {
        const HeckeRepSet& rs = reps(q);
        const MaximalOrder& O = order();
        PowerSumMultiset ms;
        for (const WMat& u : rs.w_reps)
            for (const WMat& g : gamma2_->w_elements) {
                Int r1, r2;
                wmat_power_sums(O, wmul(O, u, g), r1, r2);
                ms.add(r1, r2);
            }
        return sum_character(ms, chars_.get(j, k), q) /
               rat_of(static_cast<Int>(gamma2_->size()));
    }

    // tr(T_{u,q}^d): sum over d-tuples of representatives; theta = q^d
    Rational trace_q_power(Int q, int d, int j, int k) {
        GU2_INPUT_CHECK(d >= 1, error, "power must be >= 1");
        if (d == 1) return trace_q(q, j, k);
        const HeckeRepSet& rs = reps(q);
        const MaximalOrder& O = order();
        // W_q already accounts for the innermost u_i * gamma layer
        std::vector<WMat> layer = w_theta(q);
        Int theta = q;
        for (int step = 2; step <= d; ++step) {
            std::vector<WMat> next;
            next.reserve(layer.size() * rs.w_reps.size());
            for (const WMat& u : rs.w_reps)
                for (const WMat& x : layer) next.push_back(wmul(O, u, x));
            layer = std::move(next);
            theta *= q;
        }
        PowerSumMultiset ms = collect_power_sums(O, layer, threads_);
        return sum_character(ms, chars_.get(j, k), theta) /
               rat_of(static_cast<Int>(gamma2_->size()));
    }

    // ---- D^x side (Eichler) ----------------------------------------------

    // h = 1 exactly when |O^x| equals the Eichler mass bound 24/(p-1)
    bool quat_class_number_one() {
        std::size_t u = cache_.get(1).size();
        return 24 % (p() - 1) == 0 &&
               u == static_cast<std::size_t>(24 / (p() - 1));
    }

    // dim A(D^x, U, V_j) = dim S_{j+2}^new(Gamma_0(p)) for even j > 0
    BigInt dim_quat(int j) {
        GU2_INPUT_CHECK(quat_class_number_one(), class_number_error,
                        "D^x side requires class number one");
        Su2Character chi = build_su2_character(j);
        const auto& units = cache_.get(1).elems;
        Rational acc = 0;
        for (const OrderElem& u : units)
            acc += chi.eval_scaled(rat_of(order().trd(u)), 1);
        BigInt out = to_integer(acc / rat_of(units.size()));
        GU2_CHECK(out >= 0, "negative quaternionic dimension");
        return out;
    }

    // tr(T_q) on A(D^x, U, V_j): by the same coset identity this is the
    // chi_j sum over all of X_q divided by |O^x|
    Rational quat_trace(Int q, int j) {
        GU2_INPUT_CHECK(quat_class_number_one(), class_number_error,
                        "D^x side requires class number one");
        (void)quat_hecke_reps(order(), p(), q, cache_);  // degree check q+1
        Su2Character chi = build_su2_character(j);
        Rational acc = 0;
        for (const OrderElem& x : cache_.get(q).elems)
            acc += chi.eval_scaled(rat_of(order().trd(x)), rat_of(q));
        return acc / rat_of(cache_.get(1).size());
    }

    // literal representative-times-unit double sum, for cross-checks
    Rational quat_trace_literal(Int q, int j) {
        auto reps = quat_hecke_reps(order(), p(), q, cache_);
        Su2Character chi = build_su2_character(j);
        const auto& units = cache_.get(1).elems;
        const MaximalOrder& O = order();
        Rational acc = 0;
        for (const OrderElem& r : reps)
            for (const OrderElem& u : units) {
                OrderElem x = O.mul(r, u);
                acc += chi.eval_scaled(rat_of(O.trd(x)), rat_of(q));
            }
        return acc / rat_of(units.size());
    }

    // dim S_{j+2}^new(Gamma_0(p)) routed through the quaternionic side when
    // h = 1 and through the classical formula otherwise (p = 11)
    Int newform_count(int j) {
        GU2_INPUT_CHECK(j > 0 && j % 2 == 0, unsupported_error,
                        "newform count needs even j > 0");
        if (quat_class_number_one()) {
            BigInt d = dim_quat(j);
            GU2_CHECK(d.fits_slong_p(), "dimension overflow");
            return d.get_si();
        }
        return dim_new_gamma0_prime(j + 2, p());
    }

    int threads() const { return threads_; }
    void set_threads(int t) { threads_ = t > 0 ? t : 1; }

   private:
    // ---- optional on-disk memoization of the W_theta lists -----------------
    // One text file per (p, theta), format "gu2-wcache v1 <p> <theta> <count>"
    // followed by 16 integer coordinates per matrix.  Loaded lists are
    // re-verified against the defining relation, so a stale or corrupt cache
    // can only cost a recompute, never a wrong result.

    std::string cache_file(Int theta) const {
        return cache_dir_ + "/v1_p" + std::to_string(p()) + "_w" +
               std::to_string(theta) + ".txt";
    }

    bool load_cached_w(Int theta, std::vector<WMat>& out) {
        if (cache_dir_.empty()) return false;
        std::ifstream f(cache_file(theta));
        if (!f.good()) return false;
        std::string magic, ver;
        Int fp = 0, fth = 0;
        std::size_t count = 0;
        f >> magic >> ver >> fp >> fth >> count;
        if (magic != "gu2-wcache" || ver != "v1" || fp != p() || fth != theta)
            return false;
        std::vector<WMat> w(count);
        for (auto& m : w)
            for (int t = 0; t < 4; ++t)
                for (int c = 0; c < 4; ++c)
                    if (!(f >> m.e[t][c])) return false;
        try {
            for (const WMat& m : w) detail::verify_W_element(G_, theta, m);
        } catch (const error&) {
            return false;
        }
        out = std::move(w);
        return true;
    }

    void save_cached_w(Int theta, const std::vector<WMat>& w) const {
        if (cache_dir_.empty()) return;
        std::ofstream f(cache_file(theta));
        if (!f.good()) return;  // cache is best effort
        f << "gu2-wcache v1 " << p() << " " << theta << " " << w.size()
          << "\n";
        for (const WMat& m : w) {
            for (int t = 0; t < 4; ++t)
                for (int c = 0; c < 4; ++c)
                    f << m.e[t][c] << (t == 3 && c == 3 ? "" : " ");
            f << "\n";
        }
    }

    AlgebraConfig cfg_;
    GenusData G_;
    NormListCache cache_;
    CharacterTable chars_;
    int threads_ = 1;
    std::string cache_dir_;
    std::optional<FiniteGroup> gamma1_, gamma2_;
    PowerSumMultiset group_ms_;
    std::map<Int, std::vector<WMat>> wq_;
    std::map<Int, HeckeRepSet> reps_;
    std::map<Int, PowerSumMultiset> wq_ms_;
};

// ---- oldform bookkeeping ----------------------------------------------------

struct OldformData {
    Rational old_trace;
    Int m = 0;  // dim S_{j+2k-2}(SL_2(Z))
    Int n = 0;  // dim S_{j+2}^new(Gamma_0(p))
};

// level-1 eigenvalue sum over all of S_w(SL_2(Z)); records must cover the
// whole space (sum of orbit degrees = m)
inline Rational level1_eigenvalue_sum(const EigenformDatabase& db, Int w,
                                      Int q, Int m) {
    if (m == 0) return 0;
    auto recs = db.find(1, w);
    Int covered = 0;
    Rational acc = 0;
    for (const EigenformRecord* r : recs) {
        covered += r->degree();
        acc += orbit_eigenvalue_sum(*r, q);
    }
    if (covered != m)
        throw data_error(
            "level-1 records cover dimension " + std::to_string(covered) +
            " of " + std::to_string(m) + " at weight " + std::to_string(w));
    return acc;
}

inline OldformData oldform_trace(TraceEngine& eng, const EigenformDatabase& db,
                                 Int q, int j, int k) {
    GU2_INPUT_CHECK(j > 0, unsupported_error,
                    "oldform trace is defined for j > 0 only");
    GU2_INPUT_CHECK(j % 2 == 0 && k >= 3, unsupported_error,
                    "need even j and k >= 3");
    GU2_INPUT_CHECK(q != eng.p(), unsupported_error, "q must differ from p");
    GU2_CHECK(j + 2 * k - 6 != 0, "j + 2k - 6 = 0 is outside Cor-DD scope");

    OldformData out;
    Int w = j + 2 * k - 2;
    out.m = dim_cusp_sl2(w);
    out.n = eng.newform_count(j);

    Rational sum_g = level1_eigenvalue_sum(db, w, q, out.m);
    Rational sum_h = 0;
    if (out.m > 0 && out.n > 0) {
        if (!eng.quat_class_number_one())
            throw unsupported_error(
                "oldform eigenvalue sums need the D^x trace formula, which "
                "requires class number one (p <= 7)");
        sum_h = eng.quat_trace(q, j);
    }
    out.old_trace = rat_of(out.n) * sum_g +
                    rat_of(out.m) * pow_rational(rat_of(q), k - 2) * sum_h;
    return out;
}

// full trace decomposition; j = 0 is handled by the documented convention
// that the old space is empty when S_2^new(Gamma_0(p)) vanishes (true for
// p <= 7; the j = 0 cells at p = 11 are unsupported)
inline TraceResult trace_decomposition(TraceEngine& eng,
                                       const EigenformDatabase& db, Int q,
                                       int j, int k) {
    TraceResult res;
    res.p = eng.p();
    res.q = q;
    res.j = j;
    res.k = k;
    res.total = eng.trace_q(q, j, k);
    res.full_dim = eng.dim_full(j, k);
    if (j == 0) {
        if (dim_new_gamma0_prime(2, eng.p()) != 0)
            throw unsupported_error(
                "j = 0 with a nonvanishing weight-2 newspace: old-space rule "
                "undefined");
        res.j0_empty_old_assumed = true;
        res.old_part = 0;
        res.m = dim_cusp_sl2(j + 2 * k - 2);
        res.n = 0;
    } else {
        OldformData old = oldform_trace(eng, db, q, j, k);
        res.old_part = old.old_trace;
        res.m = old.m;
        res.n = old.n;
    }
    res.new_part = res.total - res.old_part;
    res.old_dim = BigInt(static_cast<long>(res.m)) * static_cast<long>(res.n);
    res.new_dim = res.full_dim - res.old_dim;
    GU2_CHECK(res.new_dim >= 0, "old dimension exceeds the full dimension");
    return res;
}

// the Hecke eigenvalue b_q of the unique new eigenform; requires the new
// space to be one-dimensional
inline TraceResult new_eigenvalue(TraceEngine& eng,
                                  const EigenformDatabase& db, Int q, int j,
                                  int k) {
    TraceResult res = trace_decomposition(eng, db, q, j, k);
    if (res.new_dim != 1) {
        std::string msg =
            "new space has dimension " + res.new_dim.get_str() +
            ", eigenvalue extraction needs dimension 1";
        if (res.new_dim > 1)
            msg += "; power traces tr(T^d), d <= dim, identify the "
                   "eigenvalues up to ordering";
        throw unsupported_error(msg);
    }
    return res;
}

}  // namespace gu2

#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "rebsim/core/errors.hpp"
#include "rebsim/core/fock.hpp"
#include "rebsim/core/mode.hpp"
#include "rebsim/core/tolerances.hpp"

namespace rebsim {

namespace detail {

// Basis index <-> per-mode digit bookkeeping for a mixed-radix register.
// The first label is the most significant digit (kron convention).
inline std::vector<std::size_t> strides(const std::vector<ModeLabel>& labels) {
    std::vector<std::size_t> s(labels.size(), 1);
    for (std::size_t j = labels.size(); j-- > 1;)
        s[j - 1] = s[j] * static_cast<std::size_t>(labels[j].dim);
    return s;
}

inline int find_label(const std::vector<ModeLabel>& labels, const std::string& name) {
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (labels[i].name == name) return static_cast<int>(i);
    return -1;
}

// Map from new basis index to old basis index when labels are reordered so
// that new position p holds old label perm[p].
inline std::vector<std::size_t> basis_map(const std::vector<ModeLabel>& old_labels,
                                          const std::vector<int>& perm) {
    const auto old_strides = strides(old_labels);
    std::vector<ModeLabel> new_labels(perm.size());
    for (std::size_t p = 0; p < perm.size(); ++p) new_labels[p] = old_labels[perm[p]];
    const std::size_t total = product_dim(old_labels);
    std::vector<std::size_t> map(total);
    std::vector<int> digit(perm.size(), 0);
    for (std::size_t idx = 0; idx < total; ++idx) {
        std::size_t old_idx = 0;
        for (std::size_t p = 0; p < perm.size(); ++p)
            old_idx += static_cast<std::size_t>(digit[p]) * old_strides[perm[p]];
        map[idx] = old_idx;
        for (std::size_t p = perm.size(); p-- > 0;) {
            if (++digit[p] < new_labels[p].dim) break;
            digit[p] = 0;
        }
    }
    return map;
}

inline Matrix permute_matrix(const Matrix& m, const std::vector<std::size_t>& map) {
    Matrix out(m.rows(), m.cols());
    const Eigen::Index n = m.rows();
    for (Eigen::Index c = 0; c < n; ++c)
        for (Eigen::Index r = 0; r < n; ++r)
            out(r, c) = m(map[r], map[c]);
    return out;
}

} // namespace detail

// Dense operator over an ordered set of named modes. Unitarity is not
// assumed (projectors and Kraus parts are NamedOperators too).
class NamedOperator {
public:
    NamedOperator(std::vector<ModeLabel> labels, Matrix m)
        : labels_(std::move(labels)), mat_(std::move(m)) {
        check_unique_names(labels_);
        const auto dim = static_cast<Eigen::Index>(product_dim(labels_));
        if (mat_.rows() != dim || mat_.cols() != dim)
            throw CompositionError("operator matrix dimension does not match its labels");
    }

    const std::vector<ModeLabel>& labels() const { return labels_; }
    const Matrix& matrix() const { return mat_; }
    std::size_t dim() const { return static_cast<std::size_t>(mat_.rows()); }

    NamedOperator adjoint() const { return NamedOperator(labels_, mat_.adjoint()); }
    NamedOperator scaled(Complex c) const { return NamedOperator(labels_, c * mat_); }

    static NamedOperator identity(std::vector<ModeLabel> labels) {
        const auto d = static_cast<Eigen::Index>(product_dim(labels));
        return NamedOperator(std::move(labels), Matrix::Identity(d, d));
    }

private:
    std::vector<ModeLabel> labels_;
    Matrix mat_;
};

// Non-normalized density matrix over an ordered set of named modes.
// The trace carries the accumulated success probability of the pipeline
// that produced the state, so trace <= 1 instead of trace == 1.
class NamedState {
public:
    NamedState(std::vector<ModeLabel> labels, Matrix rho)
        : labels_(std::move(labels)), rho_(std::move(rho)) {
        check_unique_names(labels_);
        const auto dim = static_cast<Eigen::Index>(product_dim(labels_));
        if (rho_.rows() != dim || rho_.cols() != dim)
            throw CompositionError("state matrix dimension does not match its labels");
    }

    static NamedState pure(std::vector<ModeLabel> labels, const Vector& psi) {
        Matrix rho = psi * psi.adjoint();
        return NamedState(std::move(labels), std::move(rho));
    }

    // All modes in their ground/vacuum level.
    static NamedState ground(std::vector<ModeLabel> labels) {
        const auto d = static_cast<Eigen::Index>(product_dim(labels));
        Matrix rho = Matrix::Zero(d, d);
        rho(0, 0) = 1.0;
        return NamedState(std::move(labels), std::move(rho));
    }

    const std::vector<ModeLabel>& labels() const { return labels_; }
    const Matrix& matrix() const { return rho_; }
    std::size_t dim() const { return static_cast<std::size_t>(rho_.rows()); }
    std::size_t mode_count() const { return labels_.size(); }

    int find_mode(const std::string& name) const { return detail::find_label(labels_, name); }
    bool has_mode(const std::string& name) const { return find_mode(name) >= 0; }

    const ModeLabel& mode(const std::string& name) const {
        int i = find_mode(name);
        if (i < 0) throw CompositionError("mode '" + name + "' not found in state");
        return labels_[static_cast<std::size_t>(i)];
    }

    double trace() const { return rho_.trace().real(); }

    // Population of the top level of one mode: the truncation-leakage probe.
    double top_level_population(const std::string& name) const {
        const int pos = find_mode(name);
        if (pos < 0) throw CompositionError("mode '" + name + "' not found in state");
        const auto s = detail::strides(labels_);
        const int d = labels_[pos].dim;
        double pop = 0.0;
        for (std::size_t idx = 0; idx < dim(); ++idx) {
            const int digit = static_cast<int>((idx / s[pos]) % static_cast<std::size_t>(d));
            if (digit == d - 1) pop += rho_(idx, idx).real();
        }
        return pop;
    }

    // Lazy invariant check: Hermiticity, positive semidefiniteness,
    // trace within [0, 1 + tol].
    void validate(const Tolerances& tol = default_tolerances()) const {
        const double herm = (rho_ - rho_.adjoint()).cwiseAbs().maxCoeff();
        if (herm > tol.hermiticity)
            throw ValidationError("state is not Hermitian (deviation " + std::to_string(herm) + ")");
        Eigen::SelfAdjointEigenSolver<Matrix> es(rho_, Eigen::EigenvaluesOnly);
        const double min_eig = es.eigenvalues().minCoeff();
        if (min_eig < tol.eigenvalue_floor)
            throw ValidationError("state has negative eigenvalue " + std::to_string(min_eig));
        const double tr = trace();
        if (tr < tol.eigenvalue_floor || tr > 1.0 + tol.trace_excess)
            throw ValidationError("state trace " + std::to_string(tr) + " outside [0, 1]");
    }

private:
    std::vector<ModeLabel> labels_;
    Matrix rho_;
};

// --- composition ------------------------------------------------------------

namespace detail {

inline std::vector<ModeLabel> concat_labels(const std::vector<ModeLabel>& a,
                                            const std::vector<ModeLabel>& b) {
    std::vector<ModeLabel> out = a;
    out.insert(out.end(), b.begin(), b.end());
    check_unique_names(out); // duplicate name -> composition error
    return out;
}

} // namespace detail

inline NamedState tensor_product(const NamedState& a, const NamedState& b) {
    return NamedState(detail::concat_labels(a.labels(), b.labels()),
                      kron(a.matrix(), b.matrix()));
}

inline NamedOperator tensor_product(const NamedOperator& a, const NamedOperator& b) {
    return NamedOperator(detail::concat_labels(a.labels(), b.labels()),
                         kron(a.matrix(), b.matrix()));
}

// Reorder modes. new_order must name every mode exactly once.
inline NamedState permuted(const NamedState& state, const std::vector<std::string>& new_order) {
    if (new_order.size() != state.mode_count())
        throw CompositionError("permutation must mention every mode exactly once");
    std::vector<int> perm;
    perm.reserve(new_order.size());
    for (const auto& name : new_order) {
        const int i = state.find_mode(name);
        if (i < 0) throw CompositionError("mode '" + name + "' not found in state");
        perm.push_back(i);
    }
    std::vector<int> sorted = perm;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i)
        if (sorted[i] != static_cast<int>(i))
            throw CompositionError("permutation must mention every mode exactly once");
    std::vector<ModeLabel> new_labels(perm.size());
    for (std::size_t p = 0; p < perm.size(); ++p) new_labels[p] = state.labels()[perm[p]];
    const auto map = detail::basis_map(state.labels(), perm);
    return NamedState(std::move(new_labels), detail::permute_matrix(state.matrix(), map));
}

namespace detail {

// rho' = (I (x) M) rho (I (x) M)^dag for M acting on the trailing block of
// the register (the fastest-varying index, contiguous in the column-major
// layout). The padded operator is never materialized. The left action
// streams column-by-column with the zero pattern of M skipped (conditional
// and beamsplitter operators are mostly zeros); the right action runs over
// contiguous column panels.
inline Matrix sandwich_trailing(const Matrix& m, const Matrix& rho, std::size_t rest) {
    const auto n = rho.rows();
    const auto d_op = m.rows();

    // nonzero pattern of M by row
    std::vector<std::vector<std::pair<Eigen::Index, Complex>>> rows(
        static_cast<std::size_t>(d_op));
    for (Eigen::Index i = 0; i < d_op; ++i)
        for (Eigen::Index k = 0; k < d_op; ++k)
            if (m(i, k) != Complex(0, 0)) rows[static_cast<std::size_t>(i)].push_back({k, m(i, k)});

    Matrix a(n, n);
    const std::size_t n_cols = static_cast<std::size_t>(rest) * static_cast<std::size_t>(n);
    const Complex* src = rho.data();
    Complex* dst = a.data();
    for (std::size_t col = 0; col < n_cols; ++col) {
        const Complex* in = src + col * static_cast<std::size_t>(d_op);
        Complex* out_col = dst + col * static_cast<std::size_t>(d_op);
        for (Eigen::Index i = 0; i < d_op; ++i) {
            Complex acc(0, 0);
            for (const auto& [k, w] : rows[static_cast<std::size_t>(i)]) acc += w * in[k];
            out_col[i] = acc;
        }
    }

    Matrix out(n, n);
    const Matrix m_adj = m.adjoint();
    for (Eigen::Index c = 0; c < static_cast<Eigen::Index>(rest); ++c)
        out.middleCols(c * d_op, d_op).noalias() = a.middleCols(c * d_op, d_op) * m_adj;
    return out;
}

struct ApplyPlan {
    bool needs_permutation = false;
    std::vector<std::size_t> to_back;  // new index -> old index
    std::vector<std::size_t> from_back;
    std::size_t rest = 1;
};

inline ApplyPlan plan_apply(const NamedOperator& op, const NamedState& state) {
    ApplyPlan plan;
    std::vector<int> targets;
    targets.reserve(op.labels().size());
    for (const auto& m : op.labels()) {
        const int pos = state.find_mode(m.name);
        if (pos < 0)
            throw CompositionError("operator mode '" + m.name + "' not found in state");
        if (state.labels()[pos].dim != m.dim)
            throw CompositionError("operator mode '" + m.name + "' dim " +
                                   std::to_string(m.dim) + " does not match state dim " +
                                   std::to_string(state.labels()[pos].dim));
        targets.push_back(pos);
    }
    plan.rest = state.dim() / op.dim();
    const std::size_t lead = state.mode_count() - targets.size();
    bool trailing = true;
    for (std::size_t i = 0; i < targets.size(); ++i)
        if (targets[i] != static_cast<int>(lead + i)) { trailing = false; break; }
    if (trailing) return plan;

    plan.needs_permutation = true;
    std::vector<int> perm;
    std::vector<bool> used(state.mode_count(), false);
    for (int p : targets) used[static_cast<std::size_t>(p)] = true;
    for (std::size_t i = 0; i < state.mode_count(); ++i)
        if (!used[i]) perm.push_back(static_cast<int>(i));
    perm.insert(perm.end(), targets.begin(), targets.end());
    plan.to_back = basis_map(state.labels(), perm);
    // Inverse permutation restores the original register order afterwards.
    plan.from_back.resize(plan.to_back.size());
    for (std::size_t i = 0; i < plan.to_back.size(); ++i)
        plan.from_back[plan.to_back[i]] = i;
    return plan;
}

} // namespace detail

// K rho K^dag with K auto-padded by identities on the modes it does not name
// and auto-permuted to the state's mode order. Label order of the state is
// preserved.
inline NamedState apply(const NamedOperator& op, const NamedState& state) {
    const auto plan = detail::plan_apply(op, state);
    if (!plan.needs_permutation) {
        return NamedState(state.labels(),
                          detail::sandwich_trailing(op.matrix(), state.matrix(), plan.rest));
    }
    Matrix work = detail::permute_matrix(state.matrix(), plan.to_back);
    work = detail::sandwich_trailing(op.matrix(), work, plan.rest);
    return NamedState(state.labels(), detail::permute_matrix(work, plan.from_back));
}

// Sum_i K_i rho K_i^dag. All operators must name the same modes.
inline NamedState apply_kraus(const std::vector<NamedOperator>& kraus, const NamedState& state) {
    if (kraus.empty()) throw CompositionError("apply_kraus: empty operator list");
    if (kraus.size() == 1) return apply(kraus.front(), state);
    const auto plan = detail::plan_apply(kraus.front(), state);
    Matrix work = plan.needs_permutation
                      ? detail::permute_matrix(state.matrix(), plan.to_back)
                      : state.matrix();
    Matrix acc = Matrix::Zero(work.rows(), work.cols());
    for (const auto& k : kraus) {
        if (k.labels() != kraus.front().labels())
            throw CompositionError("apply_kraus: Kraus operators disagree on mode labels");
        acc += detail::sandwich_trailing(k.matrix(), work, plan.rest);
    }
    if (plan.needs_permutation) acc = detail::permute_matrix(acc, plan.from_back);
    return NamedState(state.labels(), std::move(acc));
}

// Remove the named modes, summing over their basis states. Trace is preserved
// exactly (up to floating rounding); remaining label order is preserved.
inline NamedState partial_trace(const NamedState& state, const std::vector<std::string>& names) {
    if (names.empty()) return state;
    std::vector<bool> traced(state.mode_count(), false);
    for (const auto& name : names) {
        const int pos = state.find_mode(name);
        if (pos < 0) throw CompositionError("partial_trace: unknown mode '" + name + "'");
        if (traced[static_cast<std::size_t>(pos)])
            throw CompositionError("partial_trace: mode '" + name + "' listed twice");
        traced[static_cast<std::size_t>(pos)] = true;
    }

    const auto all_strides = detail::strides(state.labels());
    std::vector<ModeLabel> kept;
    std::vector<std::size_t> kept_strides, traced_strides;
    std::vector<int> traced_dims;
    for (std::size_t i = 0; i < state.mode_count(); ++i) {
        if (traced[i]) {
            traced_strides.push_back(all_strides[i]);
            traced_dims.push_back(state.labels()[i].dim);
        } else {
            kept.push_back(state.labels()[i]);
            kept_strides.push_back(all_strides[i]);
        }
    }

    // Offset tables for the kept and traced sub-registers.
    const std::size_t n_kept = product_dim(kept);
    std::vector<std::size_t> kept_offset(n_kept, 0);
    {
        std::vector<int> digit(kept.size(), 0);
        for (std::size_t idx = 0; idx < n_kept; ++idx) {
            std::size_t off = 0;
            for (std::size_t p = 0; p < kept.size(); ++p)
                off += static_cast<std::size_t>(digit[p]) * kept_strides[p];
            kept_offset[idx] = off;
            for (std::size_t p = kept.size(); p-- > 0;) {
                if (++digit[p] < kept[p].dim) break;
                digit[p] = 0;
            }
        }
    }
    std::size_t n_traced = 1;
    for (int d : traced_dims) n_traced *= static_cast<std::size_t>(d);
    std::vector<std::size_t> traced_offset(n_traced, 0);
    {
        std::vector<int> digit(traced_dims.size(), 0);
        for (std::size_t idx = 0; idx < n_traced; ++idx) {
            std::size_t off = 0;
            for (std::size_t p = 0; p < traced_dims.size(); ++p)
                off += static_cast<std::size_t>(digit[p]) * traced_strides[p];
            traced_offset[idx] = off;
            for (std::size_t p = traced_dims.size(); p-- > 0;) {
                if (++digit[p] < traced_dims[p]) break;
                digit[p] = 0;
            }
        }
    }

    const Matrix& rho = state.matrix();
    Matrix out = Matrix::Zero(static_cast<Eigen::Index>(n_kept),
                              static_cast<Eigen::Index>(n_kept));
    for (std::size_t c = 0; c < n_kept; ++c)
        for (std::size_t r = 0; r < n_kept; ++r) {
            Complex sum(0, 0);
            for (std::size_t t = 0; t < n_traced; ++t)
                sum += rho(static_cast<Eigen::Index>(kept_offset[r] + traced_offset[t]),
                           static_cast<Eigen::Index>(kept_offset[c] + traced_offset[t]));
            out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = sum;
        }
    return NamedState(std::move(kept), std::move(out));
}

// The trace of the non-normalized density matrix is the accumulated success
// probability of the pipeline that produced it.
inline double success_probability(const NamedState& state) { return state.trace(); }

} // namespace rebsim

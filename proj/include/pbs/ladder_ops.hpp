#pragma once

#include <vector>

#include "pbs/types.hpp"

// Ladder monomials: products of creation/annihilation operators on a multimode
// truncated Fock space have at most one nonzero entry per column. Storing the
// (target row, amplitude) pair per column makes every superoperator term in the
// master equations an O(D^2) pass instead of a dense matrix product.

namespace pbs {

struct LadderOp {
    // col c maps to row[c] with amplitude val[c]; row[c] == -1 annihilates the column
    std::vector<int> row;
    std::vector<cplx> val;

    int dim() const { return int(row.size()); }

    LadderOp dagger() const {
        LadderOp d;
        d.row.assign(row.size(), -1);
        d.val.assign(row.size(), cplx(0));
        for (int c = 0; c < dim(); ++c) {
            if (row[c] >= 0) {
                d.row[row[c]] = c;
                d.val[row[c]] = std::conj(val[c]);
            }
        }
        return d;
    }

    CMatrix dense() const {
        CMatrix m = CMatrix::Zero(dim(), dim());
        for (int c = 0; c < dim(); ++c)
            if (row[c] >= 0) m(row[c], c) = val[c];
        return m;
    }
};

// delta[k] = net ladder action on mode k (+1 creation, -1 annihilation, 0 none),
// amplitude = the usual sqrt factors. Multi-step actions on one mode are not needed here.
inline LadderOp make_ladder(const std::vector<int>& dims, const std::vector<int>& delta) {
    if (dims.size() != delta.size())
        throw DimensionError("make_ladder: dims/delta size mismatch");
    int total = 1;
    for (int d : dims) total *= d;
    LadderOp op;
    op.row.assign(total, -1);
    op.val.assign(total, cplx(0));
    const int nm = int(dims.size());
    std::vector<int> occ(nm, 0);
    for (int c = 0; c < total; ++c) {
        int rest = c;
        for (int k = nm - 1; k >= 0; --k) {
            occ[k] = rest % dims[k];
            rest /= dims[k];
        }
        double amp = 1.0;
        bool dead = false;
        int r = 0;
        for (int k = 0; k < nm; ++k) {
            int o = occ[k] + delta[k];
            if (o < 0 || o >= dims[k]) {
                dead = true;
                break;
            }
            if (delta[k] > 0) amp *= std::sqrt(double(o));          // a^dag |n> = sqrt(n+1)|n+1>
            else if (delta[k] < 0) amp *= std::sqrt(double(occ[k]));  // a |n> = sqrt(n)|n-1>
            r = r * dims[k] + o;
        }
        if (!dead) {
            op.row[c] = r;
            op.val[c] = amp;
        }
    }
    return op;
}

// occupation-number diagonal of one mode, as a vector on the composite space
inline Eigen::VectorXd number_diag(const std::vector<int>& dims, int mode) {
    int total = 1;
    for (int d : dims) total *= d;
    Eigen::VectorXd w(total);
    const int nm = int(dims.size());
    for (int c = 0; c < total; ++c) {
        int rest = c;
        int occ = 0;
        for (int k = nm - 1; k >= 0; --k) {
            int o = rest % dims[k];
            rest /= dims[k];
            if (k == mode) occ = o;
        }
        w(c) = double(occ);
    }
    return w;
}

// out += scale * M * X
inline void apply_left(const LadderOp& m, const CMatrix& x, CMatrix& out, cplx scale) {
    for (int c = 0; c < m.dim(); ++c)
        if (m.row[c] >= 0) out.row(m.row[c]) += (scale * m.val[c]) * x.row(c);
}

// out += scale * X * M
inline void apply_right(const CMatrix& x, const LadderOp& m, CMatrix& out, cplx scale) {
    for (int c = 0; c < m.dim(); ++c)
        if (m.row[c] >= 0) out.col(c) += (scale * m.val[c]) * x.col(m.row[c]);
}

// out += scale * M * X * M^dag
inline void apply_sandwich(const LadderOp& m, const CMatrix& x, CMatrix& out, double scale) {
    for (int c2 = 0; c2 < m.dim(); ++c2) {
        if (m.row[c2] < 0) continue;
        const cplx f = scale * std::conj(m.val[c2]);
        auto dst = out.col(m.row[c2]);
        const auto src = x.col(c2);
        for (int c1 = 0; c1 < m.dim(); ++c1)
            if (m.row[c1] >= 0) dst(m.row[c1]) += f * m.val[c1] * src(c1);
    }
}

// tr(M * X)
inline cplx trace_of_product(const LadderOp& m, const CMatrix& x) {
    cplx t(0);
    for (int c = 0; c < m.dim(); ++c)
        if (m.row[c] >= 0) t += m.val[c] * x(c, m.row[c]);
    return t;
}

}  // namespace pbs

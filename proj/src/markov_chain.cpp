// SPDX-License-Identifier: Apache-2.0

#include "cbap/markov_chain.hpp"

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include <cmath>

namespace cbap {

BackoffChain::BackoffChain(const MacParams& mac) : mac_(mac)
{
    mac_.validate();
    offset_.resize(static_cast<std::size_t>(mac_.h) + 1);
    for (int i = 0; i <= mac_.h; ++i) {
        offset_[static_cast<std::size_t>(i)] = states_;
        states_ += static_cast<std::size_t>(mac_.window(i));
    }
}

std::size_t BackoffChain::index(int stage, int counter) const
{
    if (stage < 0 || stage > mac_.h || counter < 0 || counter >= mac_.window(stage))
        throw InvalidParameter("BackoffChain::index: state out of range");
    return offset_[static_cast<std::size_t>(stage)] + static_cast<std::size_t>(counter);
}

std::vector<BackoffChain::Transition> BackoffChain::transitions(double p) const
{
    if (!(p >= 0.0 && p < 1.0))
        throw DomainError("BackoffChain: p must lie in [0, 1)");

    std::vector<Transition> out;
    out.reserve(states_ * 2);
    const int w0 = mac_.window(0);
    for (int i = 0; i <= mac_.h; ++i) {
        const int wi = mac_.window(i);
        for (int k = 1; k < wi; ++k)
            out.push_back({index(i, k), index(i, k - 1), 1.0});

        const std::size_t head = index(i, 0);
        if (i < mac_.h) {
            const int wn = mac_.window(i + 1);
            for (int k = 0; k < w0; ++k)
                out.push_back({head, index(0, k), (1.0 - p) / w0});
            for (int k = 0; k < wn; ++k)
                out.push_back({head, index(i + 1, k), p / wn});
        } else {
            // retry limit: success or drop, either way a fresh packet at stage 0
            for (int k = 0; k < w0; ++k)
                out.push_back({head, index(0, k), 1.0 / w0});
        }
    }
    return out;
}

BackoffChain::Stationary BackoffChain::stationary(double p) const
{
    const auto trans = transitions(p);
    const auto n = static_cast<Eigen::Index>(states_);

    // Rows of (P^T - I) are the balance equations; row 0 is replaced by the
    // normalization sum(pi) = 1.
    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(trans.size() + 2 * states_);
    for (const auto& t : trans) {
        if (t.to != 0)
            triplets.emplace_back(static_cast<Eigen::Index>(t.to),
                                  static_cast<Eigen::Index>(t.from), t.prob);
    }
    for (Eigen::Index s = 1; s < n; ++s)
        triplets.emplace_back(s, s, -1.0);
    for (Eigen::Index s = 0; s < n; ++s)
        triplets.emplace_back(0, s, 1.0);

    Eigen::SparseMatrix<double> a(n, n);
    a.setFromTriplets(triplets.begin(), triplets.end());
    a.makeCompressed();

    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    lu.compute(a);
    if (lu.info() != Eigen::Success)
        throw SolverFailure("BackoffChain: LU factorization failed", NAN);

    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
    rhs(0) = 1.0;
    const Eigen::VectorXd pi = lu.solve(rhs);
    if (lu.info() != Eigen::Success)
        throw SolverFailure("BackoffChain: stationary solve failed", NAN);

    Stationary st;
    st.probabilities.assign(pi.data(), pi.data() + n);
    for (int i = 0; i <= mac_.h; ++i)
        st.tau += st.probabilities[index(i, 0)];
    st.b00 = st.probabilities[index(0, 0)];
    return st;
}

double tau_of_p_numeric(double p, const MacParams& mac)
{
    return BackoffChain(mac).stationary(p).tau;
}

} // namespace cbap

#pragma once

// Concrete instances: the embedding of upper-triangular scalar matrices, entrywise
// descriptions of the maximal covers of T_2 and T_3, and generator families.

#include "maxcover/matpoly.hpp"

#include <string>
#include <vector>

namespace maxcover {

/// w_i w_{i+1} ... w_{j-1} (1 for i == j).
Poly omega_chain(Config config, int i, int j);

/// iota(E_ij) = e_ij ⊗ w_i ... w_{j-1} for 1 <= i <= j <= n; needs n - 1 copies.
MatPoly triangular_unit(Config config, int n, int i, int j);

/// iota applied to a scalar upper-triangular matrix (entries below the diagonal ignored).
MatPoly triangular_embed(Config config, const std::vector<std::vector<GaussRational>>& x);

/// All iota(E_ij), i <= j, in row-major order.
std::vector<MatPoly> triangular_units(Config config, int n);

/// Entrywise description of C*_max(T_2) over C<t1>.
std::string tmax2_spec_text();
/// Entrywise description of C*_max(T_3) over C<t1,t2> (the algebra 𝔄).
std::string tmax3_spec_text();
/// Product-form (1,4) entry for T_4: w1 C<t1,t2> w2 C<t2,t3> w3.
std::string t4_product_spec_text();
/// Candidate entrywise description for the 2-cycle.
std::string cycle2_candidate_spec_text();

/// Scalar generators of B(1,k), ..., B(l,k): the diagonal units and e_{a,b}, e_{b,a} for each block.
std::vector<MatPoly> b_factor_generators(Config config, int k, int l);

/// Images of the generators of A(1,k), ..., A(k-1,k) under the concrete model: e_rr,
/// e_rr ⊗ t_j, e_rr ⊗ w_j, e_{j,j+1}, e_{j+1,j}.
std::vector<MatPoly> a_path_model_generators(Config config, int k);

/// Generators for the 2-cycle: e_12 ⊗ w_1, e_12 ⊗ w_2, the diagonal units, and
/// e_rr ⊗ x for x in {t1, w1, t2, w2}.
std::vector<MatPoly> cycle2_generators(Config config);

/// Dimension of the unital algebra generated by the scalar matrices, by dense closure.
int scalar_closure_dimension(int k, const std::vector<std::vector<GaussRational>>& matrices);

}  // namespace maxcover

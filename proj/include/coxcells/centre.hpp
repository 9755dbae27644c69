/*
  This is centre.hpp

  Hom dimensions and induction multiplicities for one twisted cell.
  Everything is a finite sum inside the asymptotic ring:

      dim_hom(z, u) = sum over y of tau(t_{y^-1} t_z t_{eps(y)} t_{u^-1})
      psi_x: sum over y of t_y t_x t_{eps(y)^-1} = sum over z psi_x(z) t_z

  The two are proved equal under transposition (psi_u(z) = dim_hom(z,u)),
  which makes computing both and comparing them the cheapest strong
  check on the whole pipeline; centre_report does exactly that, along
  with symmetry, support on boc0, invariance of psi under eps, and
  non-negativity.  A report never hides a failed check: each verdict is
  carried by name with its outcome.

  The single-argument operations below evaluate their defining sums
  literally through j_mul and tau; the report builder uses an
  index-level rearrangement of the same sums, so they double as an
  internal cross-check against each other.
*/

#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "coxcells/jring.hpp"
#include "coxcells/twist.hpp"

namespace coxcells {

long long dim_hom(const JRingTable& j, const OrdinaryAut& eps, Elt z, Elt u);

/* z -> psi_x(z), zero entries omitted. */
std::map<Elt, long long> psi(const JRingTable& j, const OrdinaryAut& eps,
                             Elt x);

/* The class sum_z psi_x(z) t_z. */
JElement i_eps_class(const JRingTable& j, const OrdinaryAut& eps, Elt x);

/* Multiplicities in the truncated convolution of the classes of z and
   u: w -> jc(z, u, w), zero entries omitted. */
std::map<Elt, long long> trunc_conv_class(const JRingTable& j, Elt z, Elt u);

struct CentreOptions {
  int threads = 1;
};

struct CentreReport {
  int cell = -1;
  std::string eps;
  int a = 0;
  /* Cell members ascending by element index, i.e. by (length,
     ShortLex); matrix rows and columns follow this order. */
  std::vector<Elt> members;
  std::vector<char> in_boc0;  // per member
  std::vector<std::vector<long long>> dim_hom;  // [z][u]
  std::vector<std::vector<long long>> psi;      // [x][z]
  long long total_dim = 0;
  /* Named checks in a fixed order; false means the computed matrices
     violate the property. */
  std::vector<std::pair<std::string, bool>> verdicts;

  bool all_verdicts_pass() const;
};

CentreReport centre_report(const GroupTable& g, const CellPartition& part,
                           const JRingTable& j, const OrdinaryAut& eps,
                           const CentreOptions& opt = CentreOptions{});

}  // namespace coxcells

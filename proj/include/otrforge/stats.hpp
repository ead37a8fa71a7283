#pragma once

namespace otrforge {

// Upper-tail p-value of a chi-square statistic: Q(dof/2, stat/2) via the
// regularized incomplete gamma function.
double chi_square_pvalue(double stat, int dof);

}  // namespace otrforge

#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "unisum/extended_sum.hpp"

namespace unisum {

/// The unique interior jump location of the section u_x(z) = U(x,z), found
/// by refining grid cells whose value change survives bisection down to a
/// bracket of width 1e-9. Returns nothing for sections continuous at that
/// resolution; throws if several distinct jumps are found (the operator is
/// then outside the class handled here).
std::optional<double> section_discontinuity(const OperatorHandle& u, double x, int grid_n = 201,
                                            double tol = 1e-9);

struct IdempotentStructure {
    std::vector<std::pair<double, double>> intervals;   // maximal closed runs, may be points
    std::vector<std::pair<double, double>> lower_gaps;  // open idempotent-free gaps in [0,e]
    std::vector<std::pair<double, double>> upper_gaps;  // same in [e,1]
};

IdempotentStructure find_idempotents(const OperatorHandle& u, int grid_n = 201,
                                     double tol = 1e-9);

enum class SegmentKind { StrictlyDecreasing, Horizontal, Vertical };

struct MultiSegment {
    SegmentKind kind;
    double x_lo, x_hi;      // x-extent; equal for vertical segments
    double level = 0.0;     // horizontal: the common jump location y
    double y_lo = 0.0, y_hi = 0.0;  // vertical: the covered y-interval
    std::vector<std::pair<double, double>> samples;  // strictly decreasing curve
};

struct MultiFunctionGraph {
    std::vector<MultiSegment> segments;
};

/// The characterizing multi-function assembled from per-section switch
/// points, with horizontal runs mirrored into vertical segments.
MultiFunctionGraph extract_multifunction(const OperatorHandle& u, int grid_n = 201,
                                         double tol = 1e-9);

enum class SummandKind { Representable, SInternal, ArchimedeanTNorm, ArchimedeanTConorm,
                         Internal };

struct ClassificationSets {
    std::vector<std::size_t> K1, K2, K3, K4, N2, N4;  // indices into the summand list
    std::vector<double> B, C;  // accumulation points; empty for finite decompositions
};

struct DecompositionResult {
    ExtendedOrdinalSumSpec spec;
    std::vector<SummandKind> summand_kinds;
    ClassificationSets classes;
    double residual;
    std::pair<double, double> residual_witness;
};

struct ResidualError : std::runtime_error {
    double residual, x, y;
    ResidualError(double r, double x_, double y_);
};

/// Structure recovery: idempotent gaps, per-gap segment classification,
/// representable/Archimedean generator fitting, s-internal curve sampling,
/// g/h read-off, and grid verification of the reassembled extended sum.
/// Throws ResidualError when the verification residual exceeds the bound.
DecompositionResult decompose(const OperatorHandle& u, int grid_n = 201,
                              double residual_tol = 1e-6);

struct DiffReport {
    double max_diff;
    double x, y;  // argmax witness
    bool within(double tol) const { return max_diff <= tol; }
};

DiffReport verify_pointwise(const OperatorHandle& a, const OperatorHandle& b, int grid_n,
                            double tol = 0.0);

struct AxiomReport {
    struct Entry {
        std::string name;
        double max_violation;
        std::array<double, 3> witness;
    };
    std::vector<Entry> entries;

    bool ok(double tol) const;
};

/// Commutativity and neutrality on the square grid, monotonicity on
/// adjacent grid pairs, associativity on the ternary grid.
AxiomReport check_axioms(const OperatorHandle& u, int grid_n = 51, double tol = 1e-9);

/// Rounds to the coarsest decimal representation within `tol`; used to pin
/// recovered breakpoints to the exact values the operator was built from.
double snap_value(double x, double tol);

}  // namespace unisum

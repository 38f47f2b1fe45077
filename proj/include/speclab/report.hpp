#ifndef SPECLAB_REPORT_HPP
#define SPECLAB_REPORT_HPP

#include "speclab/convergence.hpp"
#include "speclab/diagonal_model.hpp"
#include "speclab/fourier_field.hpp"
#include "speclab/or_function.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace speclab {

// Shortest round-trip decimal representation (17 significant digits max).
std::string format_double(double value);

// FourierField CSV, header j1,...,jn,re,im, rows in canonical mode order.
// Write/read round-trips bit-exactly for finite values.
void write_field_csv(std::ostream& out, const FourierField& f);
FourierField read_field_csv(std::istream& in, double support_radius_hint = -1.0);

// TruncationTable CSV: lambda,err_target,err_l2,bound,ratio.
void write_table_csv(std::ostream& out, const TruncationTable& table);

// Flat key=value blocks.
void write_stress_report(std::ostream& out, const StressReport& report);
void write_index_report(std::ostream& out, const IndexEstimate& estimate);
void write_embedding_report(std::ostream& out, const EmbeddingVerdict& verdict);

// Weyl counting CSV: lambda,count,ratio.
void write_weyl_csv(std::ostream& out, int n, const std::vector<double>& lambdas);

// Replay block for a diagonal-model configuration: q and upsilon lines, then
// one line per index: lambda_re,lambda_im,w,omega_re,omega_im,eta_re,eta_im,
// g_re,g_im.
void write_model_replay(std::ostream& out, const ModelReplay& replay);
ModelReplay read_model_replay(std::istream& in);

// Standalone log-log SVG chart of err_target and bound against lambda.
// Byte-deterministic for identical tables.
void emit_svg(std::ostream& out, const TruncationTable& table, const std::string& title);

}  // namespace speclab

#endif  // SPECLAB_REPORT_HPP

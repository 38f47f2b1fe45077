#include "speclab/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace speclab {

namespace {

double parse_double(std::string_view token, const char* what) {
    double value = 0.0;
    if (token == "inf") return std::numeric_limits<double>::infinity();
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size())
        throw std::invalid_argument(std::string(what) + ": bad numeric field '" +
                                    std::string(token) + "'");
    return value;
}

long parse_long(std::string_view token, const char* what) {
    long value = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size())
        throw std::invalid_argument(std::string(what) + ": bad integer field");
    return value;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(sep, start);
        if (pos == std::string_view::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return fields;
}

const char* verdict_name(EmbeddingVerdict::Verdict v) {
    switch (v) {
        case EmbeddingVerdict::Verdict::Convergent: return "Convergent";
        case EmbeddingVerdict::Verdict::Divergent: return "Divergent";
        case EmbeddingVerdict::Verdict::Indeterminate: return "Indeterminate";
    }
    return "?";
}

const char* method_name(EmbeddingVerdict::Method m) {
    switch (m) {
        case EmbeddingVerdict::Method::IndexRule: return "IndexRule";
        case EmbeddingVerdict::Method::NumericTail: return "NumericTail";
        case EmbeddingVerdict::Method::ClosedForm: return "ClosedForm";
    }
    return "?";
}

}  // namespace

std::string format_double(double value) {
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[40];
    const auto result = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, result.ptr);
}

void write_field_csv(std::ostream& out, const FourierField& f) {
    for (int axis = 1; axis <= f.dim(); ++axis) out << 'j' << axis << ',';
    out << "re,im\n";
    for (const auto& e : f.entries()) {
        for (int axis = 0; axis < f.dim(); ++axis) out << e.mode[static_cast<std::size_t>(axis)] << ',';
        out << format_double(e.coeff.real()) << ',' << format_double(e.coeff.imag()) << '\n';
    }
}

FourierField read_field_csv(std::istream& in, double support_radius_hint) {
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("field csv: missing header");
    const auto header = split(line, ',');
    if (header.size() < 3 || header[header.size() - 2] != "re" || header.back() != "im")
        throw std::invalid_argument("field csv: malformed header");
    const int n = static_cast<int>(header.size()) - 2;

    std::vector<FourierField::Entry> entries;
    double max_norm_sq = 0.0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto fields = split(line, ',');
        if (fields.size() != header.size())
            throw std::invalid_argument("field csv: wrong number of fields");
        FourierField::Entry e;
        for (int axis = 0; axis < n; ++axis)
            e.mode[static_cast<std::size_t>(axis)] =
                static_cast<int>(parse_long(fields[static_cast<std::size_t>(axis)], "field csv"));
        e.coeff = Complex(parse_double(fields[static_cast<std::size_t>(n)], "field csv"),
                          parse_double(fields[static_cast<std::size_t>(n) + 1], "field csv"));
        max_norm_sq = std::max(max_norm_sq, static_cast<double>(norm_squared(e.mode)));
        entries.push_back(e);
    }
    const double radius =
        (support_radius_hint >= 0.0) ? support_radius_hint : std::sqrt(max_norm_sq);
    return FourierField(n, radius, std::move(entries));
}

void write_table_csv(std::ostream& out, const TruncationTable& table) {
    out << "lambda,err_target,err_l2,bound,ratio\n";
    for (const TruncationRow& row : table.rows) {
        out << format_double(row.lambda) << ',' << format_double(row.err_target) << ','
            << format_double(row.err_l2) << ',' << format_double(row.bound) << ','
            << format_double(row.ratio) << '\n';
    }
}

void write_stress_report(std::ostream& out, const StressReport& report) {
    out << "trials=" << report.trials << '\n'
        << "worst_prefix_ratio=" << format_double(report.worst_prefix_ratio) << '\n'
        << "bound_violations=" << report.bound_violations << '\n'
        << "final_residual=" << format_double(report.final_residual) << '\n'
        << "l2_prefix_mismatch=" << format_double(report.l2_prefix_mismatch) << '\n';
}

void write_index_report(std::ostream& out, const IndexEstimate& estimate) {
    out << "s_lo=" << format_double(estimate.s_lo) << '\n'
        << "s_hi=" << format_double(estimate.s_hi) << '\n'
        << "t_min=" << format_double(estimate.t_range.first) << '\n'
        << "t_max=" << format_double(estimate.t_range.second) << '\n'
        << "lambda_min=" << format_double(estimate.lambda_range.first) << '\n'
        << "lambda_max=" << format_double(estimate.lambda_range.second) << '\n'
        << "residual=" << format_double(estimate.residual) << '\n';
}

void write_embedding_report(std::ostream& out, const EmbeddingVerdict& verdict) {
    out << "verdict=" << verdict_name(verdict.verdict) << '\n'
        << "partial_integral=" << format_double(verdict.partial_integral) << '\n'
        << "method=" << method_name(verdict.method) << '\n';
}

void write_weyl_csv(std::ostream& out, int n, const std::vector<double>& lambdas) {
    out << "lambda,count,ratio\n";
    for (double lambda : lambdas) {
        out << format_double(lambda) << ',' << modes_in_ball(n, lambda).size() << ','
            << format_double(weyl_count_ratio(n, lambda)) << '\n';
    }
}

void write_model_replay(std::ostream& out, const ModelReplay& replay) {
    out << "q=" << format_double(replay.model.q) << '\n';
    out << "upsilon=";
    bool first = true;
    for (std::size_t j : replay.upsilon) {
        if (!first) out << ',';
        out << j;
        first = false;
    }
    out << '\n';
    for (std::size_t j = 0; j < replay.model.size(); ++j) {
        out << format_double(replay.model.eigenvalues[j].real()) << ','
            << format_double(replay.model.eigenvalues[j].imag()) << ','
            << format_double(replay.model.weights[j]) << ','
            << format_double(replay.symbols.omega[j].real()) << ','
            << format_double(replay.symbols.omega[j].imag()) << ','
            << format_double(replay.symbols.eta[j].real()) << ','
            << format_double(replay.symbols.eta[j].imag()) << ','
            << format_double(replay.g[j].real()) << ',' << format_double(replay.g[j].imag())
            << '\n';
    }
}

ModelReplay read_model_replay(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line.rfind("q=", 0) != 0)
        throw std::invalid_argument("model replay: missing q line");
    const double q = parse_double(std::string_view(line).substr(2), "model replay q");
    if (!std::getline(in, line) || line.rfind("upsilon=", 0) != 0)
        throw std::invalid_argument("model replay: missing upsilon line");
    IndexSet upsilon;
    {
        const std::string_view rest = std::string_view(line).substr(8);
        if (!rest.empty())
            for (const auto token : split(rest, ','))
                upsilon.insert(static_cast<std::size_t>(parse_long(token, "model replay upsilon")));
    }
    std::vector<Complex> eigenvalues, omega, eta, g;
    std::vector<double> weights;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto fields = split(line, ',');
        if (fields.size() != 9) throw std::invalid_argument("model replay: expected 9 fields");
        eigenvalues.emplace_back(parse_double(fields[0], "replay"), parse_double(fields[1], "replay"));
        weights.push_back(parse_double(fields[2], "replay"));
        omega.emplace_back(parse_double(fields[3], "replay"), parse_double(fields[4], "replay"));
        eta.emplace_back(parse_double(fields[5], "replay"), parse_double(fields[6], "replay"));
        g.emplace_back(parse_double(fields[7], "replay"), parse_double(fields[8], "replay"));
    }
    DiagonalModel model(std::move(eigenvalues), std::move(weights), q);
    SymbolPair symbols(model, std::move(omega), std::move(eta));
    return ModelReplay{std::move(model), std::move(symbols), std::move(g), std::move(upsilon)};
}

namespace {

struct AxisRange {
    double lo = 0.0, hi = 1.0;
    double map(double v, double pix_lo, double pix_hi) const {
        return pix_lo + (v - lo) / (hi - lo) * (pix_hi - pix_lo);
    }
};

AxisRange padded_range(double lo, double hi) {
    if (!(hi > lo)) {
        lo -= 0.5;
        hi += 0.5;
    }
    const double pad = 0.06 * (hi - lo);
    return {lo - pad, hi + pad};
}

}  // namespace

void emit_svg(std::ostream& out, const TruncationTable& table, const std::string& title) {
    if (table.rows.empty()) throw std::invalid_argument("emit_svg: empty table");

    struct Point {
        double x, y;
    };
    std::vector<Point> err_pts, bound_pts;
    for (const TruncationRow& row : table.rows) {
        const double lx = std::log10(row.lambda);
        if (row.err_target > 0.0) err_pts.push_back({lx, std::log10(row.err_target)});
        if (row.bound > 0.0) bound_pts.push_back({lx, std::log10(row.bound)});
    }

    double xlo = std::log10(table.rows.front().lambda), xhi = xlo;
    double ylo = 0.0, yhi = 0.0;
    bool have_y = false;
    for (const TruncationRow& row : table.rows) {
        const double lx = std::log10(row.lambda);
        xlo = std::min(xlo, lx);
        xhi = std::max(xhi, lx);
    }
    for (const auto* series : {&err_pts, &bound_pts})
        for (const Point& p : *series) {
            if (!have_y) {
                ylo = yhi = p.y;
                have_y = true;
            }
            ylo = std::min(ylo, p.y);
            yhi = std::max(yhi, p.y);
        }
    if (!have_y) ylo = -1.0, yhi = 1.0;
    const AxisRange xr = padded_range(xlo, xhi);
    const AxisRange yr = padded_range(ylo, yhi);

    constexpr double kWidth = 640.0, kHeight = 480.0;
    constexpr double kLeft = 72.0, kRight = 620.0, kTop = 40.0, kBottom = 430.0;
    auto px = [&](double v) { return xr.map(v, kLeft, kRight); };
    auto py = [&](double v) { return yr.map(v, kBottom, kTop); };

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
    out << "<rect width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n";
    out << "<text x=\"320\" y=\"24\" text-anchor=\"middle\" font-family=\"monospace\" "
           "font-size=\"14\">"
        << title << "</text>\n";
    out << "<line x1=\"" << kLeft << "\" y1=\"" << kBottom << "\" x2=\"" << kRight
        << "\" y2=\"" << kBottom << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\""
        << kBottom << "\" stroke=\"black\"/>\n";

    for (int d = static_cast<int>(std::ceil(xr.lo)); d <= static_cast<int>(std::floor(xr.hi)); ++d) {
        const double x = px(d);
        out << "<line x1=\"" << format_double(x) << "\" y1=\"" << kBottom << "\" x2=\""
            << format_double(x) << "\" y2=\"" << kBottom + 5 << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << format_double(x) << "\" y=\"" << kBottom + 20
            << "\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"11\">1e" << d
            << "</text>\n";
    }
    for (int d = static_cast<int>(std::ceil(yr.lo)); d <= static_cast<int>(std::floor(yr.hi)); ++d) {
        const double y = py(d);
        out << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << format_double(y) << "\" x2=\"" << kLeft
            << "\" y2=\"" << format_double(y) << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << kLeft - 8 << "\" y=\"" << format_double(y + 4)
            << "\" text-anchor=\"end\" font-family=\"monospace\" font-size=\"11\">1e" << d
            << "</text>\n";
    }
    out << "<text x=\"346\" y=\"462\" text-anchor=\"middle\" font-family=\"monospace\" "
           "font-size=\"12\">lambda</text>\n";

    auto draw_series = [&](const std::vector<Point>& pts, const char* color, bool squares) {
        if (pts.size() >= 2) {
            out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
            for (std::size_t i = 0; i < pts.size(); ++i) {
                if (i) out << ' ';
                out << format_double(px(pts[i].x)) << ',' << format_double(py(pts[i].y));
            }
            out << "\"/>\n";
        }
        for (const Point& p : pts) {
            if (squares)
                out << "<rect x=\"" << format_double(px(p.x) - 3.0) << "\" y=\""
                    << format_double(py(p.y) - 3.0) << "\" width=\"6\" height=\"6\" fill=\"" << color
                    << "\"/>\n";
            else
                out << "<circle cx=\"" << format_double(px(p.x)) << "\" cy=\""
                    << format_double(py(p.y)) << "\" r=\"3\" fill=\"" << color << "\"/>\n";
        }
    };
    draw_series(err_pts, "#1f77b4", false);
    draw_series(bound_pts, "#d62728", true);

    out << "<circle cx=\"500\" cy=\"56\" r=\"3\" fill=\"#1f77b4\"/>\n"
        << "<text x=\"510\" y=\"60\" font-family=\"monospace\" font-size=\"11\">error</text>\n"
        << "<rect x=\"497\" y=\"69\" width=\"6\" height=\"6\" fill=\"#d62728\"/>\n"
        << "<text x=\"510\" y=\"76\" font-family=\"monospace\" font-size=\"11\">bound</text>\n";
    out << "</svg>\n";
}

}  // namespace speclab

#include "chebvar/report.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

#include "chebvar/errors.hpp"

namespace chebvar {

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

namespace {

void check_sink(std::ostream& sink) {
    if (!sink) throw Error("report sink is not writable");
}

}  // namespace

void emit_report(const VarianceReport& report, std::ostream& sink) {
    if (report.rows.empty()) throw DomainError("emit_report: empty report");
    sink << "x,Q,V,xQlogx,ratio\n";
    for (const auto& r : report.rows) {
        sink << r.x << ',' << r.Q << ',' << format_double(r.V) << ',' << format_double(r.xQlogx) << ','
             << format_double(r.ratio) << '\n';
    }
    check_sink(sink);
}

void emit_thm2(const VarianceReport& report, std::ostream& sink) {
    if (report.rows.empty()) throw DomainError("emit_thm2: empty report");
    if (!report.fitted_slope || !report.fitted_intercept) throw DomainError("emit_thm2: report has no fit");
    sink << "x,S,S_over_x2,logx,fitted_slope,fitted_intercept\n";
    for (const auto& r : report.rows) {
        const double x = static_cast<double>(r.x);
        sink << r.x << ',' << format_double(r.V) << ',' << format_double(r.V / (x * x)) << ','
             << format_double(std::log(x)) << ',' << format_double(*report.fitted_slope) << ','
             << format_double(*report.fitted_intercept) << '\n';
    }
    check_sink(sink);
}

void emit_thm2_partial(const VarianceReport& report, std::ostream& sink) {
    if (report.rows.empty()) throw DomainError("emit_thm2_partial: empty report");
    if (!report.fitted_c_prime) throw DomainError("emit_thm2_partial: report has no c' fit");
    sink << "x,Q,S,main,residual,fitted_c_prime\n";
    for (const auto& r : report.rows) {
        sink << r.x << ',' << r.Q << ',' << format_double(r.V) << ',' << format_double(r.thm2_main) << ','
             << format_double(r.residual) << ',' << format_double(*report.fitted_c_prime) << '\n';
    }
    check_sink(sink);
}

void emit_theta(const ThetaTable& table, std::ostream& sink) {
    sink << "q,a,theta,main,error\n";
    for (auto q : table.moduli()) {
        const double main = table.main_term(q);
        for (const auto& cell : table.residues(q)) {
            sink << q << ',' << cell.a << ',' << format_double(cell.theta) << ',' << format_double(main) << ','
                 << format_double(cell.theta - main) << '\n';
        }
    }
    check_sink(sink);
}

void emit_classification(const FrobeniusTable& table, std::ostream& sink) {
    sink << "p,log_p,cycle_type,in_C\n";
    for (const auto& e : table.entries) {
        sink << e.p << ',' << format_double(e.log_p) << ',' << e.cycle_type.to_string() << ','
             << (e.in_class ? 1 : 0) << '\n';
    }
    check_sink(sink);
}

void emit_frequencies(const FrobeniusTable& table, std::ostream& sink) {
    sink << "cycle_type,count,fraction\n";
    for (const auto& f : cycle_type_frequencies(table))
        sink << f.cycle_type.to_string() << ',' << f.count << ',' << format_double(f.fraction) << '\n';
    check_sink(sink);
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open '" + path + "' for writing");
    out << content;
    out.flush();
    if (!out) throw Error("failed writing '" + path + "'");
}

}  // namespace chebvar

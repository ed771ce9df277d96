#include "doctest.h"

#include "chebvar/config.hpp"
#include "chebvar/errors.hpp"
#include "chebvar/report.hpp"
#include "chebvar/sieve.hpp"
#include "support/contexts.hpp"

#include <cmath>
#include <limits>
#include <sstream>

using namespace chebvar;

namespace {

const char* kMinimal = R"(
[context]
polynomial = -2, 0, 0, 1
group_order = 6
class = 1+2
class_density = 1/2
abelian_conductor = 3
[run]
x = 1000
)";

std::string with_line(const std::string& section, const std::string& line) {
    std::string s = kMinimal;
    const auto at = s.find("[" + section + "]");
    const auto eol = s.find('\n', at);
    return s.insert(eol + 1, line + "\n");
}

}  // namespace

TEST_CASE("config: every fixture round-trips through emit_config") {
    for (const char* name : {"trivial.cfg", "s3.cfg", "a5.cfg"}) {
        const ExperimentConfig c = load_config(std::string(FIXTURE_DIR) + "/" + name);
        const std::string text = emit_config(c);
        CAPTURE(text);
        CHECK(parse_config(text) == c);
        CHECK(emit_config(parse_config(text)) == text);
    }
}

TEST_CASE("config: defaults and parsed values") {
    const ExperimentConfig c = parse_config(kMinimal);
    CHECK(c.context.polynomial == std::vector<std::int64_t>{-2, 0, 0, 1});
    CHECK(c.context.class_spec == std::vector<CycleType>{CycleType({1, 2})});
    CHECK(c.run.x == std::vector<std::uint64_t>{1000});
    CHECK(c.run.q_rule.kind == QRule::Kind::Full);
    CHECK(c.run.M == 3.0);
    CHECK(c.run.workers == 1);
    CHECK(c.output.directory == "out");
    CHECK(c.output.manifest);
    CHECK(c.experiment_options().memory_budget == std::size_t{2048} << 20);

    const ExperimentConfig o = parse_config(with_line("context", "admissible_overrides = 3:true, 4:false\nlog_disc_L = 7.5"));
    CHECK(o.context.admissibility_overrides == std::map<std::uint64_t, bool>{{3, true}, {4, false}});
    CHECK(o.context.log_disc_L == 7.5);
    CHECK(parse_config(emit_config(o)) == o);
}

TEST_CASE("config: errors name the source, line and field") {
    CHECK_THROWS_WITH_AS(parse_config(with_line("run", "bogus = 1"), "f.cfg"), doctest::Contains("f.cfg:"),
                         ConfigError);
    CHECK_THROWS_WITH_AS(parse_config(with_line("run", "bogus = 1")), doctest::Contains("run.bogus"), ConfigError);
    CHECK_THROWS_AS(parse_config(with_line("run", "x = 5")), ConfigError);  // duplicate
    CHECK_THROWS_WITH_AS(parse_config(with_line("run", "workers = 0")), doctest::Contains("run.workers"), ConfigError);
    CHECK_THROWS_AS(parse_config(with_line("run", "Q = x^2")), ConfigError);
    CHECK_THROWS_AS(parse_config(with_line("run", "M = -1")), ConfigError);
    CHECK_THROWS_AS(parse_config(with_line("context", "admissible_overrides = 3")), ConfigError);
    CHECK_THROWS_AS(parse_config("[nowhere]\nx = 1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("polynomial = 0, 1\n"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config("[context]\npolynomial = 0, 1\n"), doctest::Contains("group_order"),
                         ConfigError);
    std::string bad_class = kMinimal;
    bad_class.replace(bad_class.find("class = 1+2"), 11, "class = 1+1");
    CHECK_THROWS_AS(parse_config(bad_class), ConfigError);
    CHECK_THROWS_AS(load_config("/nonexistent/chebvar.cfg"), ConfigError);
}

TEST_CASE("format_double round-trips") {
    for (double v : {0.0, 1.0, -2.5, 0.1, 1e-300, 6.02214076e23, std::log(2.0)}) {
        CHECK(std::stod(format_double(v)) == v);
    }
    CHECK(format_double(66.833060266575245) == "66.833060266575245");
}

TEST_CASE("CSV emitters are deterministic and well formed") {
    const GaloisContext ctx = build_context(testctx::trivial());
    const FrobeniusTable table = classify_primes(ctx, 10, sieve_primes(10));
    const std::vector<std::uint64_t> xs{10};
    const auto report = variance_report(ctx, table, xs, QRule::parse("3"));

    std::ostringstream a, b;
    emit_report(report, a);
    emit_report(report, b);
    CHECK(a.str() == b.str());
    CHECK(a.str().rfind("x,Q,V,xQlogx,ratio\n10,3,66.83306026657", 0) == 0);
    CHECK_THROWS_AS(emit_report(VarianceReport{}, a), DomainError);

    std::ostringstream t;
    emit_theta(theta_table(ctx, table, 3), t);
    CHECK(t.str().rfind("q,a,theta,main,error\n1,1,", 0) == 0);
    std::size_t lines = 0;
    for (char ch : t.str()) lines += ch == '\n';
    CHECK(lines == 5);

    std::ostringstream c, fr;
    emit_classification(table, c);
    CHECK(c.str().rfind("p,log_p,cycle_type,in_C\n2,", 0) == 0);
    emit_frequencies(table, fr);
    CHECK(fr.str() == "cycle_type,count,fraction\n1,4,1\n");
}

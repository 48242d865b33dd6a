#include "doctest.h"
#include "json.hpp"
#include "scalereq/report.hpp"
#include "support.hpp"

using namespace scalereq;
using namespace scalereq::testing;

namespace {

std::string full_report(const Model& m, ReportFormat format) {
  const auto eval = evaluate_all(m);
  return render_report(m, eval, assess_risk(m, eval), triage(m), format);
}

std::size_t count(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

}  // namespace

TEST_SUITE("risk-report") {
  TEST_CASE("markdown report matches the checked-in golden file") {
    CHECK(full_report(golden(), ReportFormat::Markdown) == read_text(data_path("open_banking_report.md")));
  }

  TEST_CASE("markdown content") {
    const std::string md = full_report(golden(), ReportFormat::Markdown);
    const std::string T(kThinSpace);
    CHECK(md.find("| p_s | Additional load per busy second | 0.7 | 4.6 | 16.7 |") != std::string::npos);
    CHECK(md.find("| e_s | Total load per busy second | 75 | 583 | 3" + T + "733 |") != std::string::npos);
    CHECK(md.find("| Balance | e_s | green | yellow | red |") != std::string::npos);
    CHECK(md.find("Critical: 3. Non-critical: 7. Pending: 0.") != std::string::npos);
    CHECK(md.find("reference figure 3" + T + "000") != std::string::npos);
    CHECK(count(md, "\n## ") == 7);
    CHECK(md.find("\r") == std::string::npos);
  }

  TEST_CASE("rendering is byte deterministic") {
    const Model m = golden();
    for (auto format : {ReportFormat::Markdown, ReportFormat::Csv, ReportFormat::Json}) {
      const std::string first = full_report(m, format);
      for (int i = 0; i < 5; ++i) CHECK(full_report(m, format) == first);
    }
  }

  TEST_CASE("empty model renders placeholders") {
    const Model m = load_model_file(data_path("minimal.json"));
    const std::string md = full_report(m, ReportFormat::Markdown);
    CHECK(md.find("No operations.") != std::string::npos);
    CHECK(md.find("No parameters.") != std::string::npos);
    CHECK(md.find("## Risk matrix") != std::string::npos);
    CHECK(nlohmann::json::parse(full_report(m, ReportFormat::Json)).is_object());
    CHECK_FALSE(full_report(m, ReportFormat::Csv).empty());
  }

  TEST_CASE("csv carries raw numbers with CRLF records") {
    const std::string csv = full_report(golden(), ReportFormat::Csv);
    CHECK(csv.find("\r\n") != std::string::npos);
    CHECK(count(csv, "\n") == count(csv, "\r\n"));
    CHECK(csv.find("\r\nc,# bank customers granting access to TPPs,1000000,2000000,3000000\r\n") !=
          std::string::npos);
    CHECK(csv.find("\r\ne_t_s,Load from installed TPP apps per second,41.666666666666664,416.6666666666667,3200\r\n") !=
          std::string::npos);
    CHECK(csv.find("Balance,e_s,green,yellow,red") != std::string::npos);
  }

  TEST_CASE("json report structure") {
    const auto j = nlohmann::json::parse(full_report(golden(), ReportFormat::Json));
    for (const char* key : {"meta", "triage", "groups", "evaluation", "risk", "notes"}) CHECK(j.contains(key));
    CHECK(j["triage"]["counts"]["critical"] == 3);
    CHECK(j["evaluation"]["scenarios"]["extreme"]["p_s"]["display"] == "16.7");
    CHECK(j["evaluation"]["scenarios"]["realistic"]["n_h"]["value"].is_null());
  }

  TEST_CASE("format tokens") {
    CHECK(report_format_from_string("md") == ReportFormat::Markdown);
    CHECK(report_format_from_string("markdown") == ReportFormat::Markdown);
    CHECK(report_format_from_string("csv") == ReportFormat::Csv);
    CHECK(report_format_from_string("json") == ReportFormat::Json);
    CHECK_FALSE(report_format_from_string("pdf"));
  }
}

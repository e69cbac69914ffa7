#include <doctest.h>

#include <limits>

#include "ara/config_text.hpp"
#include "ara/errors.hpp"
#include "ara/experiment.hpp"

using namespace ara;
using config::Document;

TEST_CASE("document parses the supported subset") {
  const Document doc = Document::parse(R"(# leading comment
name = "a \"quoted\" string"
count = 12   # trailing
big = 18446744073709551615
ratio = -1.5e-3
flag = true
off = false
list = [1, 2,
        3]  # spans lines
rows = [[0.8, 1.0, 1.5],
        [0.5, 0.8, 2.5]]

[section]
key = "x"
)");
  CHECK(doc.get_string("name") == "a \"quoted\" string");
  CHECK(doc.get_int("count") == 12);
  CHECK(doc.get_u64("big") == std::numeric_limits<std::uint64_t>::max());
  CHECK(doc.get_number("ratio") == -1.5e-3);
  CHECK(doc.get_bool("flag"));
  CHECK_FALSE(doc.get_bool("off"));
  CHECK(doc.get_numbers("list") == std::vector<double>{1, 2, 3});
  CHECK(doc.get_number_rows("rows") ==
        std::vector<std::vector<double>>{{0.8, 1.0, 1.5}, {0.5, 0.8, 2.5}});
  CHECK(doc.get_string("section.key") == "x");
  CHECK(doc.find("section.key")->line == 14);
  CHECK(doc.find("missing") == nullptr);
}

TEST_CASE("document errors carry line and key") {
  auto line_of = [](const char* text) {
    try {
      Document::parse(text);
    } catch (const ConfigError& e) {
      return e.line();
    }
    return std::size_t{0};
  };
  CHECK(line_of("a = 1\nb = \n") == 2);
  CHECK(line_of("a = 1\na = 2\n") == 2);
  CHECK(line_of("a = \"open\n") == 1);
  CHECK(line_of("a = [1, 2\nb = 3\n") == 2);
  CHECK(line_of("a = 1 2\n") == 1);
  CHECK(line_of("[sec\n") == 1);
  CHECK(line_of("= 3\n") == 1);

  const Document doc = Document::parse("x = \"s\"\nn = 1.5\n");
  try {
    doc.get_number("x");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.line() == 1);
    CHECK(e.field() == "x");
  }
  CHECK_THROWS_AS(doc.get_int("n"), ConfigError);
  CHECK_THROWS_AS(doc.get_string("nope"), ConfigError);
  CHECK_THROWS_AS(doc.require_known({"x"}), ConfigError);
  CHECK_NOTHROW(doc.require_known({"x", "n"}));
}

TEST_CASE("number formatting round-trips") {
  for (double x : {0.1, -0.4984, 1.0, 1e-300, 123456789.125, 0.30000000000000004}) {
    const Document doc = Document::parse("x = " + config::format_number(x) + "\n");
    CHECK(doc.get_number("x") == x);
  }
  CHECK(config::format_number(1.0) == "1.0");
  CHECK(config::format_numbers({1, 0.5}) == "[1.0, 0.5]");
  CHECK(Document::parse("s = " + config::quote("a\"b\\c") + "\n").get_string("s") == "a\"b\\c");
}

TEST_CASE("experiment config from a built-in with overrides") {
  const auto cfg = parse_config(R"(
model = "original-n3"
solver = "algorithm1"
profile = "paper"
seed = 42
repeats = 3
retain_samples_for = ["0.7,0.0,0.3"]

[model]
target_values = [1.0, 1.0, 1.0]

[budget]
per_iteration = 50

[gate]
mode = "standard-wilson"
)");
  CHECK(cfg.model_name == "original-n3");
  CHECK(cfg.model.target_values == std::vector<double>{1, 1, 1});
  CHECK(cfg.model.status_quo == builtin_params("original-n3").status_quo);
  CHECK(cfg.profile == Profile::kPaper);
  CHECK(cfg.budget.outer.per_iteration == 50);
  CHECK(cfg.budget.outer.initial == 8);
  CHECK(cfg.budget.nested.per_iteration == 125);
  CHECK(cfg.budget.n_r == 1000);
  CHECK(cfg.gate.mode == GateMode::kStandardWilson);
  CHECK(cfg.seed == 42);
  CHECK(cfg.repeats == 3);
  CHECK(cfg.retain_samples_for == std::vector<Allocation>{Allocation({7, 0, 3})});
  CHECK(cfg.exact_reference);
}

TEST_CASE("explicit model without a built-in") {
  const auto cfg = parse_config(R"(
[model]
status_quo = [0.4, 0.35]
attack_difficulty = [-0.4984, -0.4984]
defense_difficulty = [-0.4984, -0.4373]
target_values = [1.3, 0.8]
traits = [[0.8, 1.0, 1.5], [0.5, 0.8, 2.5]]
)");
  CHECK(cfg.model == builtin_params("original-n2"));
  CHECK(cfg.model_name.empty());
  CHECK(cfg.budget == budget_for(Profile::kDesk, 2));
}

TEST_CASE("config round-trips through text") {
  for (const auto& name : builtin_names()) {
    for (Profile p : {Profile::kDesk, Profile::kPaper}) {
      ExperimentConfig cfg = ExperimentConfig::for_builtin(name, p);
      cfg.seed = 0xFFFFFFFFFFFFFFFFull;
      cfg.solver = SolverKind::kGreedy;
      cfg.greedy.inner = GreedyInner::kExact;
      cfg.greedy.stop_threshold = 0.03;
      cfg.output_dir = "out dir";
      cfg.retain_samples_for = {enumerate(cfg.model.dimension())[1]};
      cfg.model.traits[0].upper += 0.125;
      CHECK(parse_config(to_text(cfg)) == cfg);
    }
  }
}

TEST_CASE("invalid configurations are reported with context") {
  auto field_of = [](const char* text) {
    try {
      parse_config(text);
    } catch (const ConfigError& e) {
      return e.field();
    }
    return std::string("<none>");
  };
  CHECK(field_of("model = \"original-n9\"\n") == "model");
  CHECK(field_of("model = \"original-n2\"\nbogus = 1\n") == "bogus");
  CHECK(field_of("model = \"original-n2\"\nsolver = \"fast\"\n") == "solver");
  CHECK(field_of("model = \"original-n2\"\n[gate]\nalpha = 0.7\n") == "gate.alpha");
  CHECK(field_of("model = \"original-n2\"\n[model]\nstatus_quo = [0.89, 0.35]\n") == "model");
  CHECK(field_of("model = \"original-n2\"\n[budget]\ninitial = 1\n") == "budget");
  CHECK(field_of("model = \"original-n2\"\nretain_samples_for = [\"0.5,0.5,0.0\"]\n") ==
        "retain_samples_for");
  CHECK(field_of("[model]\nstatus_quo = [0.4]\n") == "model.attack_difficulty");
  CHECK(field_of("model = \"original-n2\"\n[greedy]\ninner = \"smart\"\n") == "greedy.inner");
  CHECK_THROWS_AS(load_config("/nonexistent/config.toml"), ConfigError);
}

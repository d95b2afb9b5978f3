// udeed: train, apply, and evaluate diversity-regularized logistic ensembles.
//
//   udeed train     --data d.csv --variant lcud --out model.txt
//   udeed predict   --model model.txt --data d.csv
//   udeed diversity --model model.txt --data d.csv
//   udeed evaluate  --data d.csv --runs 50 --m 20 --report report.txt

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "udeed/udeed.hpp"

namespace {

struct CommonOptions {
  std::string data;
  std::string format = "csv";
  bool scale = false;
};

struct ModelOptions {
  std::size_t m = 20;
  double gamma = 1.0;
  double lambda = 1.0;
  double lr = 0.25;
  std::size_t steps = 25;
  std::size_t init_steps = 100;
  std::uint64_t seed = 0;
  double labeled_frac = 0.25;
  double test_frac = 0.5;
};

const std::map<std::string, udeed::DataFormat> kFormats = {{"csv", udeed::DataFormat::Csv},
                                                           {"sparse", udeed::DataFormat::Sparse}};

void add_data_options(CLI::App& cmd, CommonOptions& o, bool with_scale) {
  cmd.add_option("--data", o.data, "Input data file")->required();
  cmd.add_option("--format", o.format, "Input format")->check(CLI::IsMember({"csv", "sparse"}));
  if (with_scale) cmd.add_flag("--scale", o.scale, "Min-max scale features to [0, 1] before splitting");
}

void add_model_options(CLI::App& cmd, ModelOptions& o) {
  cmd.add_option("--m", o.m, "Ensemble size")->check(CLI::Range(std::size_t{2}, std::size_t{100000}));
  cmd.add_option("--gamma", o.gamma, "Weight of the diversity term")->check(CLI::NonNegativeNumber);
  cmd.add_option("--lambda", o.lambda, "Likelihood weight during initialization")->check(CLI::NonNegativeNumber);
  cmd.add_option("--lr", o.lr, "Gradient descent learning rate")->check(CLI::PositiveNumber);
  cmd.add_option("--steps", o.steps, "Maximum descent steps per stage")->check(CLI::Range(std::size_t{1}, std::size_t{1000000}));
  cmd.add_option("--init-steps", o.init_steps, "Maximum descent steps when fitting each initial classifier")
      ->check(CLI::Range(std::size_t{1}, std::size_t{1000000}));
  cmd.add_option("--seed", o.seed, "Random seed");
  cmd.add_option("--labeled-frac", o.labeled_frac, "Labeled share of the training pool, in (0, 1]")
      ->check(CLI::Range(0.0, 1.0));
  cmd.add_option("--test-frac", o.test_frac, "Share of rows held out for testing, in (0, 1)")
      ->check(CLI::Range(0.0, 1.0));
}

udeed::TrainConfig to_config(const ModelOptions& o) {
  udeed::TrainConfig c;
  c.m = o.m;
  c.gamma = o.gamma;
  c.lambda = o.lambda;
  c.learning_rate = o.lr;
  c.max_steps = o.steps;
  c.init_max_steps = o.init_steps;
  c.seed = o.seed;
  return c;
}

udeed::RawDataset load(const CommonOptions& o) {
  auto data = udeed::load_dataset(o.data, kFormats.at(o.format));
  if (data.rows.empty()) throw udeed::Error(udeed::ErrorKind::EmptyInput, "no rows in '" + o.data + "'");
  return o.scale ? udeed::min_max_scale(std::move(data)) : data;
}

std::vector<udeed::LabeledExample> augmented(const udeed::RawDataset& data) {
  std::vector<udeed::LabeledExample> out;
  out.reserve(data.rows.size());
  for (const auto& r : data.rows) out.push_back(udeed::augment(r));
  return out;
}

const char* selector_name(udeed::DiversitySelector s) {
  switch (s) {
    case udeed::DiversitySelector::Empty: return "empty";
    case udeed::DiversitySelector::LabeledFeatures: return "L";
    case udeed::DiversitySelector::Unlabeled: return "U";
  }
  return "?";
}

int cmd_train(const CommonOptions& common, const ModelOptions& mo, const std::string& variant, const std::string& out) {
  using udeed::format_fixed;
  const auto data = load(common);
  const auto split = udeed::split_lut(
      data, udeed::SplitSpec{mo.test_frac, mo.labeled_frac, udeed::derive_seed(mo.seed, 0)});
  auto config = to_config(mo);
  config.seed = udeed::derive_seed(mo.seed, 1);
  config.variant = variant == "lc" ? udeed::Variant::LC : (variant == "lcd" ? udeed::Variant::LCD : udeed::Variant::LCUD);

  const auto result = udeed::train(split.training_data(), config);
  std::cout << "variant " << udeed::to_string(config.variant) << '\n';
  std::cout << "split labeled " << split.labeled.size() << " unlabeled " << split.unlabeled.size() << " test "
            << split.test.size() << '\n';
  if (result.single_class) std::cout << "warning labeled set holds a single class\n";
  for (std::size_t s = 0; s < result.stages.size(); ++s) {
    const auto& st = result.stages[s];
    const auto& first = st.trace.front();
    const auto& last = st.trace.back();
    std::cout << "stage " << s + 1 << " D=" << selector_name(st.selector) << " steps " << st.accepted_steps
              << " v_total " << format_fixed(first.v_total) << " -> " << format_fixed(last.v_total) << " v_emp "
              << format_fixed(first.v_emp) << " -> " << format_fixed(last.v_emp) << " v_div "
              << format_fixed(first.v_div) << " -> " << format_fixed(last.v_div) << '\n';
  }
  std::cout << "test_accuracy " << format_fixed(udeed::accuracy(result.model, split.test)) << '\n';
  udeed::save_model(out, result.model);
  std::cout << "model " << out << '\n';
  return 0;
}

int cmd_predict(const CommonOptions& common, const std::string& model_path) {
  const auto model = udeed::load_model(model_path);
  const auto data = load(common);
  std::ostringstream buf;
  for (const auto& ex : augmented(data)) {
    const auto p = udeed::predict(model, ex.features);
    buf << (p.label == udeed::Label::Positive ? "+1" : "-1") << ' ' << udeed::format_real(p.margin) << '\n';
  }
  std::cout << buf.str();
  return 0;
}

int cmd_diversity(const CommonOptions& common, const std::string& model_path) {
  const auto model = udeed::load_model(model_path);
  const auto test = augmented(load(common));
  const auto s = udeed::diversity_scores(model, test);
  std::cout << "DIS " << udeed::format_real(s.dis) << '\n'
            << "1-DF " << udeed::format_real(s.df_complement) << '\n'
            << "ENT " << udeed::format_real(s.ent) << '\n'
            << "CFD " << udeed::format_real(s.cfd) << '\n'
            << "accuracy " << udeed::format_real(udeed::accuracy(model, test)) << '\n';
  return 0;
}

int cmd_evaluate(const CommonOptions& common, const ModelOptions& mo, std::size_t runs,
                 const std::vector<std::string>& methods, double alpha, const std::string& report_path) {
  auto data = udeed::load_dataset(common.data, kFormats.at(common.format));
  udeed::ExperimentOptions options;
  options.config = to_config(mo);
  options.runs = runs;
  options.methods.clear();
  for (const auto& m : methods) options.methods.push_back(udeed::method_from_string(m));
  options.test_fraction = mo.test_frac;
  options.labeled_fraction = mo.labeled_frac;
  options.alpha = alpha;
  options.scale = common.scale;

  const auto report = udeed::run_experiment(data, options);
  std::ostringstream text;
  udeed::write_report_text(text, report);
  std::cout << text.str();
  if (!report_path.empty()) {
    std::ofstream out(report_path);
    if (!out) throw udeed::Error(udeed::ErrorKind::Io, "cannot write report '" + report_path + "'");
    out << text.str();
    const std::string records_path = report_path + ".jsonl";
    std::ofstream rec(records_path);
    if (!rec) throw udeed::Error(udeed::ErrorKind::Io, "cannot write records '" + records_path + "'");
    udeed::write_report_records(rec, report);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Semi-supervised logistic ensembles with diversity on unlabeled data"};
  app.require_subcommand(1);

  CommonOptions train_data, predict_data, diversity_data, eval_data;
  ModelOptions train_model, eval_model;
  std::string variant = "lcud", out_path, predict_model, diversity_model, report_path;
  std::size_t runs = 50;
  double alpha = 0.05;
  std::vector<std::string> methods = {"lc", "lcd", "lcud", "bagging"};

  auto* train = app.add_subcommand("train", "Train an ensemble on a seeded split and write the model");
  add_data_options(*train, train_data, true);
  add_model_options(*train, train_model);
  train->add_option("--variant", variant, "Training variant")->check(CLI::IsMember({"lc", "lcd", "lcud"}));
  train->add_option("--out", out_path, "Model output path")->required();

  auto* predict = app.add_subcommand("predict", "Print '<label> <margin>' for every row of a data file");
  add_data_options(*predict, predict_data, true);
  predict->add_option("--model", predict_model, "Model file")->required();

  auto* diversity = app.add_subcommand("diversity", "Print DIS, 1-DF, ENT and CFD of a model on a labeled file");
  add_data_options(*diversity, diversity_data, true);
  diversity->add_option("--model", diversity_model, "Model file")->required();

  auto* evaluate = app.add_subcommand("evaluate", "Repeated L/U/T split experiment with paired t-tests");
  add_data_options(*evaluate, eval_data, true);
  add_model_options(*evaluate, eval_model);
  evaluate->add_option("--runs", runs, "Number of random splits")->check(CLI::Range(std::size_t{2}, std::size_t{100000}));
  evaluate->add_option("--methods", methods, "Comma-separated subset of lc,lcd,lcud,bagging")
      ->delimiter(',')
      ->check(CLI::IsMember({"lc", "lcd", "lcud", "bagging"}, CLI::ignore_case));
  evaluate->add_option("--alpha", alpha, "Significance level of the t-tests")->check(CLI::Range(0.0, 1.0));
  evaluate->add_option("--report", report_path, "Write the report here and per-run records to <path>.jsonl");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*train) return cmd_train(train_data, train_model, variant, out_path);
    if (*predict) return cmd_predict(predict_data, predict_model);
    if (*diversity) return cmd_diversity(diversity_data, diversity_model);
    if (*evaluate) return cmd_evaluate(eval_data, eval_model, runs, methods, alpha, report_path);
  } catch (const udeed::Error& e) {
    std::cerr << "udeed: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "udeed: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

#include "fnrep/cli.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "fnrep/analysis.hpp"
#include "fnrep/dsl.hpp"
#include "fnrep/report.hpp"
#include "fnrep/verify.hpp"

namespace fnrep::cli {
namespace {

struct Options {
  std::string file;
  std::string fr;
  std::string family;
  std::string net;
  long long input = 0;
  std::size_t max_n = kDefaultMaxN;
  bool force = false;
  bool json = false;
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class LoadError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

dsl::Model load(const std::string& path, std::ostream& err) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError(path + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  auto parsed = dsl::parse_text(buf.str());
  for (const auto& d : parsed.diagnostics) err << dsl::format(d, path) << "\n";
  if (!parsed.ok()) throw LoadError(path + ": parse failed");
  return std::move(*parsed.model);
}

template <class Map>
const typename Map::mapped_type& lookup(const Map& map, const std::string& name, const char* what) {
  const auto it = map.find(name);
  if (it == map.end()) throw UsageError(std::string("no ") + what + " named '" + name + "'");
  return it->second;
}

void guard_size(const ParamFamily& family, const Options& opt, std::ostream& err) {
  const std::size_t n = family.size();
  if (n > opt.max_n && !opt.force)
    throw UsageError("family '" + family.name() + "' has domain size " + std::to_string(n) +
                     " > --max-n " + std::to_string(opt.max_n) + "; pass --force to run anyway");
  if (n > kDefaultMaxN)
    err << "warning: family '" << family.name() << "' has domain size " << n
        << "; exhaustive census is O(n^4)\n";
}

nlohmann::ordered_json index_json(const FiniteDomain& d, Index i) {
  if (d.is_null(i)) return "NULL";
  return i;
}

std::string check_text(const CheckResult& c) {
  std::string s = c.holds ? "holds" : "FAILS";
  if (!c.detail.empty()) s += ": " + c.detail;
  return s;
}

Report analyze(const Options& opt, std::ostream& err) {
  const auto model = load(opt.file, err);
  const auto& fr = lookup(model.frs, opt.fr, "fr");
  const auto cls = classify(fr);
  const auto out = pushforward(fr, Distribution::uniform(fr.domain()));

  Report r{"analyze", opt.fr};
  auto& b = r.body;
  b["family"] = fr.family().name();
  b["variant"] = rule_name(fr.family().rule());
  b["param"] = index_json(fr.domain(), fr.param());
  b["domain_size"] = fr.domain().size();
  b["constant"] = cls.constant;
  b["injective"] = cls.injective;
  b["surjective"] = cls.surjective;
  b["bijective"] = cls.bijective;
  b["kind"] = to_string(cls.kind);
  b["image_size"] = cls.image_size;
  b["information_loss"] = cls.information_loss;
  b["knowledge"] = is_knowledge(fr);
  b["output_entropy_bits"] = entropy(out);
  b["contains_information"] = contains_information(out);
  b["linear"] = to_string(is_linear(fr.family()));
  return r;
}

Report census(const Options& opt, std::ostream& err) {
  const auto model = load(opt.file, err);
  const auto& family = *lookup(model.families, opt.family, "family");
  guard_size(family, opt, err);
  const auto c = emergence_census(family, {opt.threads});

  Report r{"census", opt.family};
  auto& b = r.body;
  b["family"] = c.family;
  b["variant"] = rule_name(family.rule());
  b["domain_size"] = c.domain_size;
  b["pairs_total"] = c.pairs_total;
  b["pairs_reducible"] = c.pairs_reducible;
  b["pairs_emergent"] = c.pairs_emergent;
  b["self_similar"] = c.self_similar;
  if (c.example_emergent_pair)
    b["example_emergent_pair"] = {c.example_emergent_pair->first, c.example_emergent_pair->second};
  else
    b["example_emergent_pair"] = nullptr;
  b["linear"] = to_string(is_linear(family));
  return r;
}

Report run_net(const Options& opt, std::ostream& err) {
  const auto model = load(opt.file, err);
  const auto& net = lookup(model.nets, opt.net, "net");
  if (opt.input < 0 || static_cast<unsigned long long>(opt.input) >= net.domain().size())
    throw UsageError("input " + std::to_string(opt.input) + " outside [0, " +
                     std::to_string(net.domain().size()) + ")");
  const Index in = static_cast<Index>(opt.input);
  const Index out = run(net, in);

  Report r{"run", opt.net};
  r.body["input"] = index_json(net.domain(), in);
  r.body["output"] = index_json(net.domain(), out);
  r.preamble = net.domain().is_null(out) ? "NULL\n" : std::to_string(out) + "\n";
  r.body_in_text = false;
  return r;
}

// Gives every merged node an FR name that does not clash with the model.
std::string reduced_text(const std::string& net_name, const Network& reduced,
                         const dsl::Model& model) {
  std::string frs;
  std::vector<Stage> stages;
  std::map<std::string, FunctionRep> added;
  for (std::size_t k = 0; k < reduced.stages().size(); ++k) {
    Stage stage = reduced.stages()[k];
    if (auto* seq = std::get_if<SequentialStage>(&stage); seq && seq->node.ref.empty()) {
      const auto& fr = seq->node.fr;
      const auto existing = std::find_if(model.frs.begin(), model.frs.end(),
                                         [&](const auto& entry) { return entry.second == fr; });
      if (existing != model.frs.end()) {
        seq->node.ref = existing->first;
        stages.push_back(std::move(stage));
        continue;
      }
      std::string name = net_name + "_" + std::to_string(k);
      for (int suffix = 2;; ++suffix) {
        const auto it = model.frs.find(name);
        if (it == model.frs.end() || it->second == fr) break;
        name = net_name + "_" + std::to_string(k) + "_" + std::to_string(suffix);
      }
      if (!model.frs.count(name) && !added.count(name)) {
        added.emplace(name, fr);
        frs += dsl::serialize_fr(name, fr) + "\n";
      }
      seq->node.ref = name;
    }
    stages.push_back(std::move(stage));
  }
  return frs + dsl::serialize_net(net_name, Network(std::move(stages))) + "\n";
}

Report reduce(const Options& opt, std::ostream& err) {
  const auto model = load(opt.file, err);
  const auto& net = lookup(model.nets, opt.net, "net");
  const auto reduced = reduce_chain(net);
  const bool equivalent = compose_table(net) == compose_table(reduced);

  Report r{"reduce", opt.net};
  r.preamble = reduced_text(opt.net, reduced, model);
  r.body["stages_before"] = net.stage_count();
  r.body["stages_after"] = reduced.stage_count();
  r.body["network"] = r.preamble;
  r.json_only = {"network"};
  r.body["equivalent"] = equivalent;
  return r;
}

Report verify(const Options& opt, std::ostream& err, bool& all_hold) {
  const auto model = load(opt.file, err);
  for (const auto& [name, family] : model.families) guard_size(*family, opt, err);

  Report r{"verify", opt.file};
  all_hold = true;
  auto& families = r.body["families"] = nlohmann::ordered_json::object();
  for (const auto& [name, family] : model.families) {
    const auto v = verify_family(*family, opt.threads);
    all_hold = all_hold && v.all_hold();
    auto& entry = families[name] = nlohmann::ordered_json::object();
    for (const auto& c : v.checks) entry[c.name] = check_text(c);
  }
  auto& nets = r.body["nets"] = nlohmann::ordered_json::object();
  for (const auto& [name, net] : model.nets) {
    const auto v = verify_network(name, net);
    all_hold = all_hold && v.all_hold();
    auto& entry = nets[name] = nlohmann::ordered_json::object();
    for (const auto& c : v.checks) entry[c.name] = check_text(c);
  }
  r.body["all_hold"] = all_hold;
  return r;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"Function-representation analyzer", "fnrep"};
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("file", opt.file, "model file (.frd)")->required();
    sub->add_flag("--json", opt.json, "emit the report as JSON");
  };

  auto* analyze_cmd = app.add_subcommand("analyze", "classify one FR");
  add_common(analyze_cmd);
  analyze_cmd->add_option("--fr", opt.fr, "FR name")->required();

  auto* census_cmd = app.add_subcommand("census", "count reducible and emergent compositions");
  add_common(census_cmd);
  census_cmd->add_option("--family", opt.family, "family name")->required();
  census_cmd->add_option("--max-n", opt.max_n, "refuse larger domains")->capture_default_str();
  census_cmd->add_flag("--force", opt.force, "run above --max-n");
  census_cmd->add_option("--threads", opt.threads, "worker threads")->check(CLI::PositiveNumber);

  auto* run_cmd = app.add_subcommand("run", "evaluate a network on one input");
  add_common(run_cmd);
  run_cmd->add_option("--net", opt.net, "net name")->required();
  run_cmd->add_option("--input", opt.input, "input index")->required();

  auto* reduce_cmd = app.add_subcommand("reduce", "collapse reducible sequential stages");
  add_common(reduce_cmd);
  reduce_cmd->add_option("--net", opt.net, "net name")->required();

  auto* verify_cmd = app.add_subcommand("verify", "check every family and net in a file");
  add_common(verify_cmd);
  verify_cmd->add_option("--max-n", opt.max_n, "refuse larger domains")->capture_default_str();
  verify_cmd->add_flag("--force", opt.force, "run above --max-n");
  verify_cmd->add_option("--threads", opt.threads, "worker threads")->check(CLI::PositiveNumber);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsageError;
  }

  try {
    bool all_hold = true;
    Report report;
    if (analyze_cmd->parsed()) report = analyze(opt, err);
    else if (census_cmd->parsed()) report = census(opt, err);
    else if (run_cmd->parsed()) report = run_net(opt, err);
    else if (reduce_cmd->parsed()) report = reduce(opt, err);
    else report = verify(opt, err, all_hold);

    out << (opt.json ? report.to_json() : report.to_text());
    return all_hold ? kSuccess : kVerificationFailed;
  } catch (const LoadError& e) {
    err << "error: " << e.what() << "\n";
    return kParseError;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }
}

}  // namespace fnrep::cli

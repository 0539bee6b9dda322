// Command-line front end: generate corpora, scan them, probe gated bundles,
// preview a bundle over loopback HTTP, and aggregate scan reports.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "lurebench/lurebench.hpp"
#include "lurebench/preview/server.hpp"

namespace fs = std::filesystem;
using namespace lurebench;

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in.good())
    throw Error("cannot read " + path.string());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_file(const fs::path& path, const std::string& content) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out.good())
    throw Error("cannot write " + path.string());
  out << content;
}

std::vector<BrandProfile> load_profiles(const std::string& dir) {
  if (dir.empty())
    return list_builtin_profiles();
  std::vector<BrandProfile> out;
  std::vector<fs::path> paths;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".json")
      paths.push_back(e.path());
  std::sort(paths.begin(), paths.end());
  for (const auto& p : paths)
    out.push_back(load_brand_profile(read_file(p)));
  if (out.empty())
    throw Error("no profile documents found in " + dir);
  return out;
}

std::vector<AttackClass> parse_classes(const std::string& csv) {
  if (csv == "all")
    return all_attack_classes();
  std::vector<AttackClass> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty())
      out.push_back(attack_class_from_string(item));
  if (out.empty())
    throw Error("no attack classes selected");
  return out;
}

std::vector<AgentProfile> load_agents(const std::string& path) {
  if (path.empty())
    return default_probe_agents();
  auto j = nlohmann::json::parse(read_file(path));
  std::vector<AgentProfile> out;
  for (const auto& ja : j) {
    AgentProfile a;
    a.name = ja.at("name").get<std::string>();
    a.user_agent = ja.at("user_agent").get<std::string>();
    a.ip = ja.value("ip", "127.0.0.1");
    a.device_class = ja.value("device_class", "desktop");
    a.scripts_enabled = ja.value("scripts_enabled", true);
    validate_agent_profile(a);
    out.push_back(std::move(a));
  }
  return out;
}

std::vector<CorpusEntry> read_index(const fs::path& out_dir) {
  fs::path index = out_dir / "index.json";
  if (!fs::exists(index))
    throw Error("no corpus index at " + index.string() + "; run generate first");
  return parse_corpus_index(read_file(index));
}

int cmd_generate(const std::string& out_dir, std::uint64_t seed, const std::string& classes_csv,
                 const std::string& profiles_dir) {
  auto classes = parse_classes(classes_csv);
  auto profiles = load_profiles(profiles_dir);
  auto entries = generate_corpus(classes, profiles, {seed}, out_dir);
  write_file(fs::path(out_dir) / "index.json", serialize_corpus_index(entries));
  std::cout << "generated " << entries.size() << " bundles into " << out_dir << "\n";
  return 0;
}

int cmd_scan(const std::string& out_dir, const std::string& bundle_id, bool probes,
             const std::string& agents_file, const std::string& report_path) {
  ScanOptions opts;
  opts.probes_enabled = probes;
  opts.agents = load_agents(agents_file);

  std::vector<CorpusEntry> entries;
  if (!bundle_id.empty()) {
    entries.push_back({bundle_id, "", "", 0});
  } else {
    entries = read_index(out_dir);
  }

  int total = 0, matched = 0, with_truth = 0;
  for (const auto& e : entries) {
    PageBundle b = load_bundle((fs::path(out_dir) / e.bundle_id).string());
    ScanReport r = scan(b, opts);
    std::string predicted = classification_of(r);
    std::string report_text = serialize_scan_report(r);
    fs::path dest = report_path.empty()
                        ? fs::path(out_dir) / "reports" / (e.bundle_id + ".json")
                        : fs::path(report_path);
    write_file(dest, report_text);
    ++total;
    // Accuracy comes from the sidecar alone; a bundle without one is
    // scanned but not graded.
    if (b.has_ground_truth) {
      ++with_truth;
      if (predicted == b.ground_truth.attack_class)
        ++matched;
      else
        std::cout << "  mismatch " << e.bundle_id << ": predicted " << predicted << ", sidecar "
                  << b.ground_truth.attack_class << "\n";
    }
    std::cout << e.bundle_id << " -> " << predicted << "\n";
  }
  if (with_truth > 0) {
    std::cout << "accuracy " << matched << "/" << with_truth;
    std::printf(" (%.2f)\n", static_cast<double>(matched) / with_truth);
  }
  std::cout << "scanned " << total << " bundle" << (total == 1 ? "" : "s") << "\n";
  return 0;
}

int cmd_probe(const std::string& out_dir, const std::string& bundle_id,
              const std::string& agents_file) {
  PageBundle b = load_bundle((fs::path(out_dir) / bundle_id).string());
  HarnessRuntime runtime;
  GateProbeData data = run_gate_probes(b, load_agents(agents_file), 10, runtime);

  nlohmann::ordered_json j;
  j["bundle"] = b.bundle_id;
  if (data.differential) {
    j["differential"] = nlohmann::ordered_json::array();
    for (const auto& o : data.differential->observations) {
      nlohmann::ordered_json jo;
      jo["agent"] = o.agent;
      jo["content_hash"] = o.content_hash;
      jo["served_file"] = o.served_file;
      jo["final_target"] = o.final_target;
      jo["password_inputs"] = o.password_inputs;
      jo["has_sensitive_inputs"] = o.has_sensitive_inputs;
      j["differential"].push_back(std::move(jo));
    }
  }
  if (data.polymorphic) {
    j["polymorphic"] = nlohmann::ordered_json::array();
    for (const auto& o : data.polymorphic->observations)
      j["polymorphic"].push_back({{"final_url", o.final_url}, {"content_hash", o.content_hash}});
  }
  if (data.captcha) {
    j["token_gate"] = {{"found_gate", data.captcha->found_gate},
                       {"gated_route", data.captcha->gated_route},
                       {"pre_token_sensitive", data.captcha->pre_token_sensitive},
                       {"post_token_sensitive", data.captcha->post_token_sensitive}};
  }
  std::cout << j.dump(2) << "\n";
  return 0;
}

int cmd_serve(const std::string& out_dir, const std::string& bundle_id, const std::string& bind,
              int port) {
  if (!is_loopback_address(bind))
    throw ValidationError("bind", "preview server binds loopback addresses only");
  PageBundle b = load_bundle((fs::path(out_dir) / bundle_id).string());
  HarnessRuntime runtime;
  PreviewServer server(b, runtime);
  std::cout << "serving " << bundle_id << " at http://" << bind << ":" << port << "/"
            << b.entry_path << " (Ctrl-C stops)\n";
  if (!server.listen(bind, port))
    throw Error("cannot bind " + bind + ":" + std::to_string(port));
  return 0;
}

int cmd_report(const std::string& out_dir, const std::string& report_path) {
  auto entries = read_index(out_dir);
  nlohmann::ordered_json summary;
  summary["corpus"] = out_dir;
  summary["bundles"] = entries.size();
  std::map<std::string, std::pair<int, int>> per_class;  // class -> {matched, total}
  int matched = 0, graded = 0;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& e : entries) {
    fs::path rp = fs::path(out_dir) / "reports" / (e.bundle_id + ".json");
    if (!fs::exists(rp))
      continue;
    auto jr = nlohmann::json::parse(read_file(rp));
    std::string predicted = "regular";
    double best = -1.0;
    for (const auto& jf : jr.at("findings")) {
      double c = jf.at("confidence").get<double>();
      if (c > best) {
        best = c;
        std::string t = jf.at("technique").get<std::string>();
        predicted = t == "credential_exfil" ? "regular" : t;
      }
    }
    PageBundle b = load_bundle((fs::path(out_dir) / e.bundle_id).string());
    if (!b.has_ground_truth)
      continue;
    ++graded;
    auto& slot = per_class[b.ground_truth.attack_class];
    ++slot.second;
    if (predicted == b.ground_truth.attack_class) {
      ++matched;
      ++slot.first;
    }
    rows.push_back({{"bundle_id", e.bundle_id},
                    {"expected", b.ground_truth.attack_class},
                    {"predicted", predicted}});
  }
  summary["graded"] = graded;
  summary["matched"] = matched;
  summary["accuracy"] = graded == 0 ? 0.0 : static_cast<double>(matched) / graded;
  summary["per_class"] = nlohmann::ordered_json::object();
  for (const auto& [cls, mt] : per_class)
    summary["per_class"][cls] = {{"matched", mt.first}, {"total", mt.second}};
  summary["rows"] = std::move(rows);
  std::string text = summary.dump(2) + "\n";
  if (report_path.empty()) {
    std::cout << text;
  } else {
    write_file(report_path, text);
    std::cout << "wrote " << report_path << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lurebench: inert phishing-corpus generator and scanner"};
  app.require_subcommand(1);

  std::string out_dir = "corpus";
  std::string profiles_dir;
  std::string classes_csv = "all";
  std::string bundle_id;
  std::string agents_file;
  std::string report_path;
  std::string bind = "127.0.0.1";
  std::uint64_t seed = 42;
  int port = 8089;
  bool no_probes = false;

  auto* gen = app.add_subcommand("generate", "write a bundle corpus");
  gen->add_option("--out", out_dir, "corpus directory");
  gen->add_option("--seed", seed, "generation seed");
  gen->add_option("--classes", classes_csv, "csv of attack classes, or 'all'");
  gen->add_option("--profiles", profiles_dir, "directory of brand profile JSON documents");

  auto* scan_cmd = app.add_subcommand("scan", "scan bundles and write reports");
  scan_cmd->add_option("--out", out_dir, "corpus directory");
  scan_cmd->add_option("--bundle", bundle_id, "scan a single bundle id");
  scan_cmd->add_option("--probes", agents_file, "agent profile JSON for probing");
  scan_cmd->add_option("--report", report_path, "report path (single-bundle scans)");
  scan_cmd->add_flag("--no-probes", no_probes, "static detectors only");

  auto* probe = app.add_subcommand("probe", "run gate probes against one bundle");
  probe->add_option("--out", out_dir, "corpus directory");
  probe->add_option("--bundle", bundle_id, "bundle id")->required();
  probe->add_option("--probes", agents_file, "agent profile JSON for probing");

  auto* serve = app.add_subcommand("serve", "preview one bundle over loopback HTTP");
  serve->add_option("--out", out_dir, "corpus directory");
  serve->add_option("--bundle", bundle_id, "bundle id")->required();
  serve->add_option("--bind", bind, "bind address (loopback only)");
  serve->add_option("--port", port, "tcp port");

  auto* report = app.add_subcommand("report", "aggregate scan reports into a summary");
  report->add_option("--out", out_dir, "corpus directory");
  report->add_option("--report", report_path, "write the summary here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (gen->parsed())
      return cmd_generate(out_dir, seed, classes_csv, profiles_dir);
    if (scan_cmd->parsed())
      return cmd_scan(out_dir, bundle_id, !no_probes, agents_file, report_path);
    if (probe->parsed())
      return cmd_probe(out_dir, bundle_id, agents_file);
    if (serve->parsed())
      return cmd_serve(out_dir, bundle_id, bind, port);
    if (report->parsed())
      return cmd_report(out_dir, report_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

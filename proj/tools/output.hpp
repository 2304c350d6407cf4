#pragma once

// Output sink for the CLI: a metadata header followed by CSV, or a single
// JSON document with a "metadata" member.

#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <ostream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

namespace qverify::cli {

using ojson = nlohmann::ordered_json;

struct Globals {
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "csv";
  std::string tolerance_profile = "default";

  bool strict() const { return tolerance_profile == "strict"; }
  bool json() const { return format == "json"; }
};

// Values of every option of `app` and of the chosen subcommand, with
// defaults for the ones not given.
ojson effective_config(const CLI::App& app);

class Output {
 public:
  Output(const Globals& g, ojson metadata);

  // CSV: "# key: value" lines, then whatever body writes.
  void csv(const std::function<void(std::ostream&)>& body);
  // JSON: {"metadata": ..., <fields of data>}
  void json(const ojson& data);
  // One record: a two-row CSV (header, values) or JSON fields.
  void record(const ojson& fields);

  void add_metadata(const std::string& key, ojson value) { meta_[key] = std::move(value); }

 private:
  std::ostream& stream();

  const Globals& g_;
  ojson meta_;
  std::unique_ptr<std::ofstream> file_;
};

std::string csv_field(const ojson& v);

}  // namespace qverify::cli

#include "output.hpp"

#include "qverify/csv.hpp"
#include "qverify/error.hpp"

namespace qverify::cli {

namespace {

void add_options(const CLI::App& app, ojson& into) {
  for (const CLI::Option* opt : app.get_options()) {
    const std::string name = opt->get_single_name();
    if (name == "help" || name == "config" || name.empty()) continue;
    if (opt->get_expected_min() == 0) {
      into[name] = opt->count() > 0;
      continue;
    }
    if (opt->count() > 0) {
      const auto& res = opt->results();
      if (opt->get_expected_max() > 1 || res.size() > 1) {
        into[name] = res;
      } else {
        into[name] = res.front();
      }
    } else {
      into[name] = opt->get_default_str();
    }
  }
}

}  // namespace

ojson effective_config(const CLI::App& app) {
  ojson cfg = ojson::object();
  add_options(app, cfg);
  for (const CLI::App* sub : app.get_subcommands()) {
    ojson s = ojson::object();
    add_options(*sub, s);
    cfg[sub->get_name()] = std::move(s);
  }
  return cfg;
}

Output::Output(const Globals& g, ojson metadata) : g_(g), meta_(std::move(metadata)) {}

std::ostream& Output::stream() {
  if (g_.out.empty() || g_.out == "-") return std::cout;
  if (!file_) {
    file_ = std::make_unique<std::ofstream>(g_.out, std::ios::binary | std::ios::trunc);
    if (!*file_) fail(ErrorCode::InvalidArgument, "cannot open output file '" + g_.out + "'");
  }
  return *file_;
}

void Output::csv(const std::function<void(std::ostream&)>& body) {
  std::ostream& os = stream();
  for (const auto& [k, v] : meta_.items()) {
    os << "# " << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
  }
  body(os);
  os.flush();
}

void Output::json(const ojson& data) {
  ojson doc;
  doc["metadata"] = meta_;
  for (const auto& [k, v] : data.items()) doc[k] = v;
  std::ostream& os = stream();
  os << doc.dump(2) << '\n';
  os.flush();
}

void Output::record(const ojson& fields) {
  if (g_.json()) {
    json(fields);
    return;
  }
  csv([&](std::ostream& os) {
    bool first = true;
    for (const auto& [k, v] : fields.items()) {
      os << (first ? "" : ",") << k;
      first = false;
    }
    os << '\n';
    first = true;
    for (const auto& [k, v] : fields.items()) {
      os << (first ? "" : ",") << csv_field(v);
      first = false;
    }
    os << '\n';
  });
}

std::string csv_field(const ojson& v) {
  if (v.is_null()) return "";
  if (v.is_number_float()) return format_real(v.get<double>());
  if (v.is_number_integer()) return v.dump();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  std::string s = v.is_string() ? v.get<std::string>() : v.dump();
  if (s.find_first_of(",\"\n") != std::string::npos) {
    std::string q = "\"";
    for (char c : s) {
      if (c == '"') q += '"';
      q += c;
    }
    return q + "\"";
  }
  return s;
}

}  // namespace qverify::cli

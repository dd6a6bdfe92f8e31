#include "swirlbound/report.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "swirlbound/errors.hpp"
#include "swirlbound/field.hpp"

namespace swirlbound {

nlohmann::json CriterionResult::to_json() const {
  return nlohmann::json{
      {"name", name}, {"pass", pass}, {"detail", detail}, {"data", data}};
}

nlohmann::json ArtifactRecord::to_json() const {
  return nlohmann::json{
      {"name", name}, {"path", path}, {"checksum", checksum}};
}

bool Verdict::pass() const {
  for (const auto& c : criteria)
    if (!c.pass) return false;
  return true;
}

void Verdict::add(const std::string& name, bool pass_,
                  const std::string& detail, nlohmann::json data) {
  criteria.push_back({name, pass_, detail, std::move(data)});
  if (!pass_) witnesses.push_back(name + ": " + detail);
}

void Verdict::attach(const std::string& name, const std::string& path) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a64_file(path)));
  artifacts.push_back({name, path, buf});
}

nlohmann::json Verdict::to_json() const {
  nlohmann::json jc = nlohmann::json::array();
  for (const auto& c : criteria) jc.push_back(c.to_json());
  nlohmann::json ja = nlohmann::json::array();
  for (const auto& a : artifacts) ja.push_back(a.to_json());
  return nlohmann::json{{"scenario", scenario}, {"pass", pass()},
                        {"criteria", jc},       {"witnesses", witnesses},
                        {"timings", timings},   {"artifacts", ja}};
}

void Verdict::write(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << to_json().dump(2) << "\n";
}

StageTimer::StageTimer(Verdict& verdict, std::string stage)
    : verdict_(verdict),
      stage_(std::move(stage)),
      start_(std::chrono::steady_clock::now()) {}

StageTimer::~StageTimer() {
  const auto end = std::chrono::steady_clock::now();
  verdict_.timings[stage_] =
      std::chrono::duration<double>(end - start_).count();
}

void write_csv_columns(
    const std::string& path, const std::vector<std::string>& headers,
    const std::vector<const std::vector<double>*>& columns) {
  if (headers.size() != columns.size())
    throw Error("csv writer: header/column count mismatch");
  std::FILE* fp = std::fopen(path.c_str(), "w");
  if (fp == nullptr) throw Error("cannot open " + path);
  for (std::size_t c = 0; c < headers.size(); ++c)
    std::fprintf(fp, "%s%s", headers[c].c_str(),
                 c + 1 == headers.size() ? "\n" : ",");
  const std::size_t nrows = columns.empty() ? 0 : columns.front()->size();
  for (const auto* col : columns)
    if (col->size() != nrows) {
      std::fclose(fp);
      throw Error("csv writer: ragged columns");
    }
  for (std::size_t r = 0; r < nrows; ++r)
    for (std::size_t c = 0; c < columns.size(); ++c)
      std::fprintf(fp, "%s%s", format_full((*columns[c])[r]).c_str(),
                   c + 1 == columns.size() ? "\n" : ",");
  std::fclose(fp);
}

void ensure_directory(const std::string& path) {
  std::error_code ec;
  std::filesystem::create_directories(path, ec);
  if (ec) throw Error("cannot create directory " + path + ": " + ec.message());
}

}  // namespace swirlbound

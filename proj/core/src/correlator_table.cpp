#include "qkrec/correlator_table.hpp"

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "qkrec/errors.hpp"

namespace qkrec {

namespace {

using nlohmann::json;

bool stable(int genus, int marked_points) {
  if (genus == 0) return marked_points >= 3;
  if (genus == 1) return marked_points >= 1;
  return true;
}

Cyclo value_from_json(const json& v) {
  if (v.is_string()) return Cyclo(rat_from_string(v.get<std::string>()));
  if (v.is_number_integer()) return Cyclo(Rat(v.get<long>()));
  if (v.is_array() && v.size() == 4) {
    std::array<Rat, 4> c;
    for (size_t j = 0; j < 4; ++j) {
      if (v[j].is_string()) {
        c[j] = rat_from_string(v[j].get<std::string>());
      } else if (v[j].is_number_integer()) {
        c[j] = Rat(v[j].get<long>());
      } else {
        throw EngineError(ErrorKind::parse, "table value tuple entries must be exact strings");
      }
    }
    return Cyclo(c[0], c[1], c[2], c[3]);
  }
  throw EngineError(ErrorKind::parse, "table value must be an exact string or a 4-tuple");
}

json value_to_json(const Cyclo& c) {
  if (c.is_rational()) return rat_to_string(c.rational_part());
  json arr = json::array();
  for (int j = 0; j < 4; ++j) arr.push_back(rat_to_string(c.coeff(j)));
  return arr;
}

}  // namespace

void TableKey::canonicalize() {
  std::sort(slots.begin(), slots.end());
  cycle_type.normalize();
}

bool TableKey::consistent() const {
  CycleType from_slots;
  for (const auto& s : slots) {
    if (s.r < 1 || s.basis < 0) return false;
    from_slots.add(s.r, 1);
  }
  return from_slots == cycle_type && degree >= 0 && (genus == 0 || genus == 1);
}

std::string TableKey::to_string() const {
  std::ostringstream os;
  os << "g=" << genus << ";l=" << cycle_type.to_string() << ";d=" << degree << ";slots=";
  for (size_t j = 0; j < slots.size(); ++j) {
    if (j) os << "|";
    os << slots[j].r << ":" << slots[j].exponent << ":" << slots[j].basis;
  }
  return os.str();
}

void CorrelatorTable::insert(TableKey key, Cyclo value, std::string provenance) {
  key.canonicalize();
  if (!key.consistent()) {
    throw EngineError(ErrorKind::invalid_argument, "inconsistent table key " + key.to_string());
  }
  entries_[std::move(key)] = TableEntry{std::move(value), std::move(provenance)};
}

std::optional<Cyclo> CorrelatorTable::lookup(const TableKey& key) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second.value;
}

std::vector<int> CorrelatorTable::degrees_present() const {
  std::set<int> ds;
  for (const auto& [k, e] : entries_) ds.insert(k.degree);
  return {ds.begin(), ds.end()};
}

CorrelatorTable CorrelatorTable::from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw EngineError(ErrorKind::parse, std::string("table JSON parse error: ") + e.what());
  }
  if (!doc.is_object() || doc.value("schema", "") != "qkrec-table-v1") {
    throw EngineError(ErrorKind::parse, "table schema must be qkrec-table-v1");
  }
  const auto& target = doc.at("target");
  int rank = target.at("rank").get<int>();
  const auto& pj = target.at("pairing");
  std::vector<std::vector<Rat>> pairing;
  for (const auto& row : pj) {
    std::vector<Rat> r;
    for (const auto& x : row) {
      if (x.is_string()) {
        r.push_back(rat_from_string(x.get<std::string>()));
      } else {
        r.push_back(Rat(x.get<long>()));
      }
    }
    pairing.push_back(std::move(r));
  }
  CorrelatorTable table(BasisInfo::make(rank, std::move(pairing)));
  for (const auto& ej : doc.at("entries")) {
    TableKey key;
    key.genus = ej.at("genus").get<int>();
    key.cycle_type = CycleType(ej.at("cycle_type").get<std::vector<int>>());
    key.degree = ej.value("degree", 0);
    for (const auto& sj : ej.at("slots")) {
      SlotKey s;
      s.r = sj.at("r").get<int>();
      s.exponent = sj.at("exponent").get<int>();
      s.basis = sj.value("basis", 0);
      if (s.basis >= rank) throw EngineError(ErrorKind::parse, "slot basis index out of range");
      key.slots.push_back(s);
    }
    key.canonicalize();
    if (!key.consistent()) {
      throw EngineError(ErrorKind::parse, "entry key inconsistent: " + key.to_string());
    }
    table.entries_[key] = TableEntry{value_from_json(ej.at("value")), ej.value("provenance", "")};
  }
  return table;
}

std::string CorrelatorTable::to_json() const {
  json doc;
  doc["schema"] = "qkrec-table-v1";
  json pairing = json::array();
  for (const auto& row : basis_->pairing) {
    json r = json::array();
    for (const auto& x : row) r.push_back(rat_to_string(x));
    pairing.push_back(r);
  }
  doc["target"] = {{"rank", basis_->rank}, {"pairing", pairing}};
  json entries = json::array();
  for (const auto& [key, entry] : entries_) {
    json ej;
    ej["genus"] = key.genus;
    ej["cycle_type"] = key.cycle_type.counts;
    ej["degree"] = key.degree;
    json slots = json::array();
    for (const auto& s : key.slots) {
      slots.push_back({{"r", s.r}, {"exponent", s.exponent}, {"basis", s.basis}});
    }
    ej["slots"] = slots;
    ej["value"] = value_to_json(entry.value);
    ej["provenance"] = entry.provenance;
    entries.push_back(ej);
  }
  doc["entries"] = entries;
  return doc.dump(2);
}

CorrelatorTable CorrelatorTable::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw EngineError(ErrorKind::parse, "cannot open table file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_json(buf.str());
}

void CorrelatorTable::save_file(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw EngineError(ErrorKind::parse, "cannot write table file: " + path);
  out << to_json() << "\n";
}

ValidationReport CorrelatorTable::validate() const {
  ValidationReport report;
  // Presence of unstable keys is itself a violation: those values are 0 by
  // convention and must not be stored.
  for (const auto& [key, entry] : entries_) {
    if (!stable(key.genus, key.cycle_type.weighted_size())) {
      report.violations.push_back("unstable key stored: " + key.to_string());
    }
  }
  auto value_or_unstable = [&](const TableKey& key) -> std::optional<Cyclo> {
    if (!stable(key.genus, key.cycle_type.weighted_size())) return Cyclo::zero();
    auto v = lookup(key);
    return v;
  };
  for (const auto& [key, entry] : entries_) {
    // String instance: key contains a level-1 slot (1, 0, 0); the reduced
    // correlator must be stable for the forgetful map to exist.
    auto unit_slot = std::find(key.slots.begin(), key.slots.end(), SlotKey{1, 0, 0});
    if (unit_slot != key.slots.end()) {
      TableKey reduced = key;
      reduced.slots.erase(reduced.slots.begin() + (unit_slot - key.slots.begin()));
      reduced.cycle_type.add(1, -1);
      reduced.canonicalize();
      if (stable(reduced.genus, reduced.cycle_type.weighted_size())) {
        bool have_all = true;
        Cyclo rhs;
        auto base = value_or_unstable(reduced);
        if (!base) {
          have_all = false;
        } else {
          rhs = *base;
        }
        for (size_t j = 0; have_all && j < reduced.slots.size(); ++j) {
          const SlotKey& s = reduced.slots[j];
          if (s.r != 1 || s.exponent == 0) continue;
          const int e = s.exponent;
          const int lo = e > 0 ? 0 : e;
          const int hi = e > 0 ? e - 1 : -1;
          for (int je = lo; have_all && je <= hi; ++je) {
            TableKey dkey = reduced;
            dkey.slots[j].exponent = je;
            dkey.canonicalize();
            auto v = value_or_unstable(dkey);
            if (!v) {
              have_all = false;
            } else {
              rhs += (e > 0) ? *v : -*v;
            }
          }
        }
        if (have_all) {
          ++report.string_instances;
          if (entry.value != rhs) {
            report.violations.push_back("string equation violated at " + key.to_string());
          }
        }
      }
    }
    // Dilaton instance (genus 0): key + (L-1)-slot, i.e. the pair of entries
    // with slots (1,1,0) and (1,0,0) appended.
    if (key.genus == 0) {
      TableKey with_l = key, with_one = key;
      with_l.slots.push_back(SlotKey{1, 1, 0});
      with_l.cycle_type.add(1, 1);
      with_l.canonicalize();
      with_one.slots.push_back(SlotKey{1, 0, 0});
      with_one.cycle_type.add(1, 1);
      with_one.canonicalize();
      auto vl = lookup(with_l);
      auto vone = lookup(with_one);
      if (vl && vone) {
        ++report.dilaton_instances;
        Cyclo lhs = *vl - *vone;
        Cyclo rhs = entry.value * Cyclo(Rat(key.cycle_type.count(1) - 2));
        if (lhs != rhs) {
          report.violations.push_back("dilaton equation violated below " + key.to_string());
        }
      }
    }
  }
  return report;
}

std::string CorrelatorTable::checksum() const {
  uint64_t h = 14695981039346656037ull;
  auto mix = [&h](const std::string& s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ull;
    }
  };
  mix("rank=" + std::to_string(basis_->rank));
  for (const auto& [key, entry] : entries_) {
    mix(key.to_string());
    mix("=");
    mix(entry.value.to_string());
    mix("\n");
  }
  std::ostringstream os;
  os << "fnv1a:" << std::hex << h;
  return os.str();
}

std::string resolve_table_path(const std::string& name) {
  namespace fs = std::filesystem;
  if (fs::exists(name)) return name;
  if (const char* env = std::getenv("QKREC_TABLE_PATH")) {
    std::string paths(env);
    size_t start = 0;
    while (start <= paths.size()) {
      size_t colon = paths.find(':', start);
      std::string dir = paths.substr(start, colon == std::string::npos ? std::string::npos : colon - start);
      if (!dir.empty()) {
        fs::path candidate = fs::path(dir) / name;
        if (fs::exists(candidate)) return candidate.string();
      }
      if (colon == std::string::npos) break;
      start = colon + 1;
    }
  }
  throw EngineError(ErrorKind::parse, "table file not found: " + name +
                                          " (searched cwd and QKREC_TABLE_PATH)");
}

}  // namespace qkrec

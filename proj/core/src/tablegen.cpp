#include "qkrec/tablegen.hpp"

#include "qkrec/errors.hpp"
#include "qkrec/point_backend.hpp"
#include "qkrec/suites.hpp"

namespace qkrec {

namespace {

bool stable(int genus, int marked_points) {
  if (genus == 0) return marked_points >= 3;
  if (genus == 1) return marked_points >= 1;
  return true;
}

bool higher_slots_trivial(const TableKey& key) {
  for (const auto& s : key.slots) {
    if (s.r >= 2 && (s.exponent != 0 || s.basis != 0)) return false;
  }
  return true;
}

}  // namespace

Rat PointTableModel::genus1_value(const TableKey& key) const {
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;
  Rat value = 0;
  // String reduction on a unit level-1 slot, while the reduced space exists.
  auto unit_slot = std::find(key.slots.begin(), key.slots.end(), SlotKey{1, 0, 0});
  bool reduced_by_string = false;
  if (unit_slot != key.slots.end()) {
    TableKey reduced = key;
    reduced.slots.erase(reduced.slots.begin() + (unit_slot - key.slots.begin()));
    reduced.cycle_type.add(1, -1);
    reduced.canonicalize();
    if (stable(1, reduced.cycle_type.weighted_size())) {
      reduced_by_string = true;
      value = genus1_value(reduced);
      for (size_t j = 0; j < reduced.slots.size(); ++j) {
        const SlotKey s = reduced.slots[j];
        if (s.r != 1 || s.exponent == 0) continue;
        for (const auto& [je, sign] : d_monomial(s.exponent)) {
          TableKey dkey = reduced;
          dkey.slots[j].exponent = je;
          dkey.canonicalize();
          Rat term = genus1_value(dkey);
          value += sign > 0 ? term : -term;
        }
      }
    }
  }
  if (!reduced_by_string) {
    // Seed families: constant in the level-1 exponent.
    const CycleType& ct = key.cycle_type;
    const int l1 = ct.count(1), l2 = ct.count(2), l3 = ct.count(3);
    if (higher_slots_trivial(key) && ct.max_length() <= 3) {
      if (l2 == 0 && l3 == 0 && l1 == 1) {
        int k = key.slots[0].exponent;
        value = seed_level1 + ((k % 2) != 0 ? -seed_level1_period2 : seed_level1_period2);
      } else if (l1 <= 1 && l2 == 1 && l3 == 0) {
        value = seed_12;
      } else if (l1 <= 1 && l2 == 1 && l3 == 1) {
        value = seed_123;
      }
    }
    // Everything else stays 0: outside the generated families.
  }
  memo_.emplace(key, value);
  return value;
}

Cyclo PointTableModel::value(const TableKey& raw) const {
  TableKey key = raw;
  key.canonicalize();
  if (key.genus == 0) return Cyclo::zero();
  if (key.genus == 1) return Cyclo(genus1_value(key));
  return Cyclo::zero();
}

std::string PointTableModel::provenance(const TableKey& key) const {
  if (key.genus == 0) {
    return "model: equivariant genus-0 super-trace set to zero (point model table)";
  }
  return "model: genus-1 string recursion from constant seed families; not geometric values";
}

void extend_with_model(CorrelatorTable& table, const std::set<TableKey>& missing,
                       const PointTableModel& model) {
  for (const auto& key : missing) {
    if (!stable(key.genus, key.cycle_type.weighted_size())) continue;
    table.insert(key, model.value(key), model.provenance(key));
  }
}

CorrelatorTable generate_point_table(const PointTableModel& model, int max_rounds) {
  BasisPtr basis = BasisInfo::point();
  CorrelatorTable table(basis);
  PointBackend pb;

  auto golden_input = [&](int order) {
    ReconstructionInput in;
    in.basis = basis;
    in.config = make_config({"eps"}, order);
    LaurentQ t1(basis, in.config);
    Series eps = Series::variable(in.config, 0);
    t1.add_term(1, KVector::unit(basis, in.config).scaled(eps));
    t1.add_term(0, KVector::unit(basis, in.config).scaled(-eps));
    in.t = {t1};
    return in;
  };
  auto const_input = [&](int order, int exponent) {
    ReconstructionInput in;
    in.basis = basis;
    in.config = make_config({"eps"}, order);
    LaurentQ t1(basis, in.config);
    t1.add_term(exponent,
                KVector::unit(basis, in.config).scaled(Series::variable(in.config, 0)));
    in.t = {t1};
    return in;
  };
  auto zero_input = [&](int order) {
    ReconstructionInput in;
    in.basis = basis;
    in.config = make_config({"eps"}, order);
    return in;
  };

  for (int round = 0; round < max_rounds; ++round) {
    std::set<TableKey> missing;
    auto collect_full = [&](const ReconstructionInput& in) {
      Pipeline p(in, &table, &pb);
      try {
        p.run_reconstruction();
      } catch (const EngineError&) {
      }
      missing.insert(p.backend().missing_keys().begin(), p.backend().missing_keys().end());
    };
    auto collect_tau = [&](const ReconstructionInput& in) {
      Pipeline p(in, &table, &pb);
      try {
        p.tau();
        for (int r = 1; r <= std::max(3, in.max_level()); ++r) p.tbar(r);
      } catch (const EngineError&) {
      }
      missing.insert(p.backend().missing_keys().begin(), p.backend().missing_keys().end());
    };

    for (int order : {2, 3}) {
      collect_full(golden_input(order));
      collect_full(zero_input(order));
      collect_full(const_input(order, 0));
      collect_full(const_input(order, 1));
    }
    {
      Pipeline p(case2_input(basis), &table, &pb);
      try {
        p.run_reconstruction();
        p.f1m(2);
      } catch (const EngineError&) {
      }
      missing.insert(p.backend().missing_keys().begin(), p.backend().missing_keys().end());
    }
    for (const auto& in : contraction_inputs(basis, kDefaultSeed, 20)) collect_tau(in);
    for (const auto& jc : jacobian_cases(basis)) {
      for (const ReconstructionInput* in : {&jc.base, &jc.extended}) {
        Pipeline p(*in, &table, &pb);
        try {
          p.jacobian_entry(jc.r);
          p.tau();
        } catch (const EngineError&) {
        }
        missing.insert(p.backend().missing_keys().begin(), p.backend().missing_keys().end());
      }
    }

    if (missing.empty()) {
      auto report = table.validate();
      if (!report.ok()) {
        std::string msg = "generated table fails validation:";
        for (const auto& v : report.violations) msg += "\n  " + v;
        throw EngineError(ErrorKind::invalid_argument, msg);
      }
      return table;
    }
    extend_with_model(table, missing, model);
  }
  throw EngineError(ErrorKind::non_convergence,
                    "table generation did not close within the round limit");
}

}  // namespace qkrec

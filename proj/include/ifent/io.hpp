/*
 * io.hpp
 *
 * File formats. Systems, covers, controllers and relations are JSON with
 * human-readable names; names resolve to dense ids at load time.
 */

#ifndef IFENT_IO_HPP_
#define IFENT_IO_HPP_

#include <iosfwd>
#include <string>
#include <vector>

#include "ifent/codec.hpp"
#include "ifent/cover.hpp"
#include "ifent/refine.hpp"
#include "ifent/system.hpp"

namespace ifent {

struct SystemModel {
  FiniteSystem sys;
  TargetSet Q;
  std::vector<std::string> state_names;
  std::vector<std::string> input_names;

  StateId state_id(const std::string& name) const;  // throws LoadError
  InputId input_id(const std::string& name) const;
  const std::string& state_name(StateId x) const;
  const std::string& input_name(InputId u) const;
};

// throws LoadError on malformed input; a missing (from,input) pair is a
// load error (strictness)
SystemModel load_system(std::istream& in);
SystemModel load_system_file(const std::string& path);
void save_system(const SystemModel& m, std::ostream& out);

InvariantCover load_cover(const SystemModel& m, std::istream& in);
InvariantCover load_cover_file(const SystemModel& m, const std::string& path);
void save_cover(const SystemModel& m, const InvariantCover& cover,
                std::ostream& out);

PeriodicCoderController load_controller(const SystemModel& m,
                                        std::istream& in);
PeriodicCoderController load_controller_file(const SystemModel& m,
                                             const std::string& path);
void save_controller(const SystemModel& m, const PeriodicCoderController& H,
                     std::ostream& out);

RefinementRelation load_relation(const SystemModel& m1, const SystemModel& m2,
                                 std::istream& in);
RefinementRelation load_relation_file(const SystemModel& m1,
                                      const SystemModel& m2,
                                      const std::string& path);
void save_relation(const SystemModel& m1, const SystemModel& m2,
                   const RefinementRelation& rel, std::ostream& out);

}  // namespace ifent

#endif

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "fpmine/scopes.hpp"
#include "fpmine/source.hpp"

namespace fpmine {

enum class Concept : std::uint8_t {
    Recursion,
    Immutability,
    LazyEvaluation,
    HigherOrderFunctions,
    CallbacksPromises,
    ConstDeclaration,  // opt-in
};

enum class Structure : std::uint8_t {
    Recursion,
    ObjectFreeze,
    ObjectAssignEmpty,
    ArraySliceNoArgs,
    SpreadElement,
    SpreadAssignment,
    Generator,
    Thunk,
    HofEvery,
    HofFilter,
    HofFind,
    HofFindIndex,
    HofFlat,
    HofFlatMap,
    HofForEach,
    HofMap,
    HofReduce,
    HofReduceRight,
    HofSome,
    HofNonNative,
    Callback,
    Promise,
    ConstDecl,
};

constexpr std::size_t kStructureCount = 23;

Concept concept_of(Structure s);
std::string_view structure_name(Structure s);
std::string_view concept_name(Concept c);
const std::vector<Structure>& all_structures();
const std::vector<Concept>& all_concepts();

struct FpOccurrence {
    Concept group = Concept::Recursion;
    Structure structure = Structure::Recursion;
    Span site_span;    // triggering node
    Span extent_span;  // whole implicated construct, used for LOC
    std::string file;
};

struct DetectorPolicy {
    enum class UnknownPolicy : std::uint8_t { Exclude, Include };
    UnknownPolicy unknown_policy = UnknownPolicy::Exclude;
    bool include_const = false;
    bool include_async_thunks = true;

    std::string describe() const;
};

// Informational counters that are reported but not part of the occurrence
// metrics.
struct DetectorExtras {
    std::uint64_t callsites_with_function_args = 0;
};

std::vector<FpOccurrence> detect_recursion(const SourceUnit& unit, const ScopeTable& scopes);
std::vector<FpOccurrence> detect_immutability(const SourceUnit& unit, const ScopeTable& scopes,
                                              const DetectorPolicy& policy);
std::vector<FpOccurrence> detect_lazy(const SourceUnit& unit, const ScopeTable& scopes,
                                      const DetectorPolicy& policy);
std::vector<FpOccurrence> detect_hof(const SourceUnit& unit, const ScopeTable& scopes,
                                     const DetectorPolicy& policy);
std::vector<FpOccurrence> detect_callbacks_promises(const SourceUnit& unit,
                                                    const ScopeTable& scopes,
                                                    DetectorExtras* extras = nullptr);
std::vector<FpOccurrence> detect_const(const SourceUnit& unit, const DetectorPolicy& policy);

// Every detector, concatenated and sorted by (file, site start, structure).
std::vector<FpOccurrence> detect_all(const SourceUnit& unit, const ScopeTable& scopes,
                                     const DetectorPolicy& policy,
                                     DetectorExtras* extras = nullptr);

}  // namespace fpmine

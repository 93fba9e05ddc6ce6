// json_io.hpp — JSON schemas for matrices, partitions, generators, local
// pairs, homomorphisms and simulator configs.
//
// Matrix:    {"rows": r, "cols": c, "re": [[..]], "im": [[..]]}  ("im" optional on read)
// Partition: {"n": n, "blocks": [[..], [..]]}
// Generator: {"n":, "d":, "A":, "B":, "C":, "D":}
// LocalPair: {"P": matrix, "u": column matrix}
// Hom:       {"m":, "j":, "n":, "V": matrix}
// SimConfig: {"generator":, "tau":, "slices":, "probes": {"seed":, "count":,
//             "exponential": [[[..d reals..] per slice] per probe]},
//             "subordinate": generator (optional; the dominated side),
//             "tau_start":, "halvings": (rates only)}

#pragma once

#include "cocycle/endo.hpp"
#include "cocycle/focksim.hpp"
#include "cocycle/generators.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>

namespace cocycle::io {

using nlohmann::json;

json matrix_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const json& j);

json partition_json(const BlockPartition& p);
BlockPartition partition_from_json(const json& j);

json generator_json(const gen::BlockGenerator& f);
gen::BlockGenerator generator_from_json(const json& j);

json local_pair_json(const gen::LocalProjectionPair& p);
gen::LocalProjectionPair local_pair_from_json(const json& j);

json hom_json(const endo::NormalHom& h);
endo::NormalHom hom_from_json(const json& j);

struct SimConfig {
    gen::BlockGenerator generator;
    double tau = 0.0;
    Index slices = 0;
    std::uint64_t seed = 1;
    int random_count = 2;
    std::vector<std::vector<ComplexVector>> exponential;  // explicit step functions
    std::optional<gen::BlockGenerator> subordinate;       // c is checked against it
    double tau_start = 0.0;  // rates
    int halvings = 0;        // rates
};

SimConfig sim_config_from_json(const json& j);

// Parse a file, throwing std::invalid_argument with the path on failure.
json load_json_file(const std::filesystem::path& path);

} // namespace cocycle::io

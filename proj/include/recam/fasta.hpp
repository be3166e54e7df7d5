#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace recam {

struct FastaRecord {
    std::string id;
    std::string description;
    std::string sequence; ///< uppercase, A/C/G/T only after parsing
};

enum class AmbiguityPolicy {
    kReject,     ///< any IUPAC ambiguity code fails the parse (default)
    kSkipRecord, ///< records containing ambiguity codes are dropped
};

struct FastaError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Standard FASTA: '>' starts a record (id = first token, description =
/// rest), sequence lines concatenate, lowercase folds to uppercase.
/// IUPAC ambiguity codes (N, R, Y, S, W, K, M, B, D, H, V) follow the
/// policy; any other character is an error. Errors carry the record and
/// 1-based sequence position.
std::vector<FastaRecord> parse_fasta(std::istream& in,
                                     AmbiguityPolicy policy = AmbiguityPolicy::kReject);
std::vector<FastaRecord> parse_fasta_file(const std::string& path,
                                          AmbiguityPolicy policy = AmbiguityPolicy::kReject);

} // namespace recam

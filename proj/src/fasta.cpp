#include "recam/fasta.hpp"

#include <cctype>
#include <fstream>
#include <istream>
#include <sstream>

namespace recam {

namespace {

bool is_ambiguity_code(char c) {
    switch (c) {
    case 'N': case 'R': case 'Y': case 'S': case 'W': case 'K':
    case 'M': case 'B': case 'D': case 'H': case 'V':
        return true;
    default:
        return false;
    }
}

bool is_base(char c) {
    return c == 'A' || c == 'C' || c == 'G' || c == 'T';
}

} // namespace

std::vector<FastaRecord> parse_fasta(std::istream& in, AmbiguityPolicy policy) {
    std::vector<FastaRecord> records;
    bool in_record = false;
    bool skip_current = false;
    FastaRecord current;

    auto flush = [&]() {
        if (!in_record)
            return;
        if (!skip_current) {
            if (current.sequence.empty())
                throw FastaError("fasta: record '" + current.id + "' has an empty sequence");
            records.push_back(std::move(current));
        }
        current = FastaRecord{};
        skip_current = false;
    };

    std::string line;
    bool any_content = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        any_content = true;
        if (line[0] == '>') {
            flush();
            in_record = true;
            std::istringstream header(line.substr(1));
            if (!(header >> current.id) || current.id.empty())
                throw FastaError("fasta: malformed header '" + line + "'");
            std::string rest;
            std::getline(header, rest);
            const auto first = rest.find_first_not_of(" \t");
            current.description = first == std::string::npos ? "" : rest.substr(first);
            continue;
        }
        if (!in_record)
            throw FastaError("fasta: sequence data before any '>' header");
        if (skip_current)
            continue;
        for (char raw : line) {
            if (std::isspace(static_cast<unsigned char>(raw)))
                continue;
            const char c = static_cast<char>(std::toupper(static_cast<unsigned char>(raw)));
            if (is_base(c)) {
                current.sequence.push_back(c);
            } else if (is_ambiguity_code(c)) {
                if (policy == AmbiguityPolicy::kSkipRecord) {
                    skip_current = true;
                    break;
                }
                throw FastaError("fasta: record '" + current.id + "': ambiguity code '" +
                                 std::string(1, raw) + "' at position " +
                                 std::to_string(current.sequence.size() + 1));
            } else {
                throw FastaError("fasta: record '" + current.id + "': invalid character '" +
                                 std::string(1, raw) + "' at position " +
                                 std::to_string(current.sequence.size() + 1));
            }
        }
    }
    flush();
    if (!any_content)
        throw FastaError("fasta: empty input");
    return records;
}

std::vector<FastaRecord> parse_fasta_file(const std::string& path, AmbiguityPolicy policy) {
    std::ifstream in(path);
    if (!in)
        throw FastaError("fasta: cannot open " + path);
    try {
        return parse_fasta(in, policy);
    } catch (const FastaError& e) {
        throw FastaError(std::string(e.what()) + " (" + path + ")");
    }
}

} // namespace recam

#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "qsv/catalog.hpp"
#include "qsv/ring.hpp"

namespace qsv {

/// Partitions whose parts lie in the given residue classes mod `modulus`.
/// A residue listed twice gives parts of that class two colors.
struct ClassSpec {
    std::string label;
    long modulus = 1;
    std::vector<long> residues;
};

using CoeffSeq = std::vector<Integer>;

/// a..h and the auxiliary sequences phi and psi.
const std::vector<ClassSpec>& partition_classes();
/// Throws UnknownIdError.
const ClassSpec& partition_class(const std::string& label);

/// Counts for 0..n by dynamic programming over part sizes.
CoeffSeq count_dp(const ClassSpec& spec, std::size_t n);
/// Counts for 0..n by listing every partition; n <= 60.
CoeffSeq count_bruteforce(const ClassSpec& spec, std::size_t n);

/// a, b, c from the recursions driven by phi.
std::map<std::string, CoeffSeq> run_recursion_abc(std::size_t n);
/// d, e, f from the recursions driven by psi.
std::map<std::string, CoeffSeq> run_recursion_def(std::size_t n);
/// g, h from the recursions driven by (q^8;q^8)_inf/(q^2;q^2)_inf.
std::map<std::string, CoeffSeq> run_recursion_gh(std::size_t n);
std::map<std::string, CoeffSeq> run_recursion(const std::string& family, std::size_t n);

/// Catalog record whose sides generate the sequence with this label ("a" -> norm-A).
std::string sequence_record(const std::string& label);

/// One report per sequence: recursion output against the product side and the sum side.
std::vector<VerifyReport> check_recursion(const Catalog& c, const std::string& family, std::size_t n);

}  // namespace qsv

#ifndef SVI_IO_HPP
#define SVI_IO_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "svi/certificates.hpp"
#include "svi/lcp.hpp"
#include "svi/market_models.hpp"
#include "svi/problem.hpp"
#include "svi/solvers.hpp"

namespace svi::io {

inline constexpr int kFormatVersion = 1;
inline constexpr const char* kToolVersion = "0.1.0";

/// Canonical text form of a double: %.17g, round-trip exact; non-finite values
/// become the strings "inf", "-inf", "nan".
std::string format_double(double v);

/// Streaming JSON writer with canonical field order and number formatting, so
/// identical inputs serialize to identical bytes.
class JsonWriter {
public:
    void begin_object();
    void end_object();
    void begin_array();
    void end_array();
    void key(const std::string& name);
    void value(double v);
    void value_int(std::int64_t v);
    void value_uint(std::uint64_t v);
    void value(bool v);
    void value(const std::string& v);
    void raw_number_vector(const Vector& v);
    void raw_matrix(const Matrix& m); // row-major array of arrays

    const std::string& str() const { return out_; }

private:
    void prefix();
    std::string out_;
    std::vector<std::pair<char, int>> stack_; // ('o' or 'a', element count)
    bool pending_key_ = false;
};

// --- files ---------------------------------------------------------------
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);
/// FNV-1a 64-bit content digest, hex.
std::string digest_hex(const std::string& bytes);

// --- problems and instances ----------------------------------------------
std::string problem_to_json(const ProblemInstance& problem);
ProblemInstance problem_from_json(const std::string& text);

std::string lcp_to_json(const LcpInstance& lcp);
LcpInstance lcp_from_json(const std::string& text);

// --- generator configs -----------------------------------------------------
using GeneratorConfig = std::variant<CournotConfig, PowerNetworkConfig>;
GeneratorConfig generator_config_from_json(const std::string& text);

// --- reports ----------------------------------------------------------------
struct Manifest {
    std::string command;
    std::vector<std::pair<std::string, std::string>> inputs; // (path, digest)
    std::uint64_t seed = 0;
    std::string tool_version = kToolVersion;
};

std::string solve_report_json(const Manifest& manifest, const std::string& method, const SolveResult& result);
std::string certify_report_json(const Manifest& manifest, const CertificateReport& report);
std::string oracle_report_json(const Manifest& manifest, const LcpInstance& lcp,
                               const std::vector<LcpSolution>& solutions, const CopositivityVerdict& copositivity,
                               const R0Verdict& r0, double beta);

} // namespace svi::io

#endif

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qttc/core_verify.hpp"
#include "qttc/instance_gen.hpp"
#include "qttc/model.hpp"
#include "qttc/prices.hpp"
#include "qttc/trace.hpp"

namespace qttc {

/// Malformed or invalid input. The message carries a line/column for syntax
/// errors and a JSON pointer (e.g. "/preferences/1") for semantic ones.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Optional display names; ids stay 0-based integers in every file.
struct Labels {
    std::vector<std::string> agents;
    std::vector<std::string> items;

    friend bool operator==(const Labels&, const Labels&) = default;
};

struct InstanceFile {
    InstanceKind kind = InstanceKind::network;
    NetworkInstance network;  // kind == network
    CapInstance cap;          // kind == cap
    std::optional<Labels> labels;
    bool arbitrary_preferences = false;

    friend bool operator==(const InstanceFile&, const InstanceFile&) = default;
};

struct ResultFile {
    InstanceKind kind = InstanceKind::network;
    std::vector<std::vector<Id>> assignments;
    std::optional<std::uint32_t> stages;
    std::optional<std::vector<Transfer>> transfers;
    std::optional<PriceTable> prices;
    std::optional<PriceReport> properties;
    std::optional<BlockingCertificate> certificate;

    friend bool operator==(const ResultFile&, const ResultFile&) = default;
};

/// Parses and validates an instance. Throws ParseError.
InstanceFile parse_instance(std::string_view text);
std::string serialize_instance(const InstanceFile& file);

/// Parses a result or candidate file; only `assignments` is required.
/// Assignment sets are canonicalized. Throws ParseError.
ResultFile parse_result(std::string_view text);
std::string serialize_result(const ResultFile& file);

/// A list of networks, as written by enumerate-core.
std::string serialize_network_list(const std::vector<DirectedNetwork>& networks, EnumerationMode mode,
                                   BlockingRule rule);

std::string_view to_string(InstanceKind kind);
std::string_view to_string(EnumerationMode mode);
std::string_view to_string(BlockingRule rule);

}  // namespace qttc

#include "vsec/csi.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <vector>

#include "vsec/errors.hpp"

namespace vsec {

namespace {

constexpr std::size_t kFieldCount = 9;
constexpr double kSnrConsistencyDb = 0.01;

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const auto bar = line.find('|', start);
        out.push_back(line.substr(start, bar == std::string_view::npos ? std::string_view::npos : bar - start));
        if (bar == std::string_view::npos) break;
        start = bar + 1;
    }
    return out;
}

[[noreturn]] void malformed(const char* field, std::string_view text) {
    throw CsiError(CsiErrorCode::Malformed, std::string(field) + " = '" + std::string(text) + "'");
}

double parse_decimal(std::string_view text, const char* field) {
    // -?digits(.digits{1,4})?
    std::size_t i = 0;
    if (i < text.size() && text[i] == '-') ++i;
    const std::size_t int_start = i;
    while (i < text.size() && text[i] >= '0' && text[i] <= '9') ++i;
    if (i == int_start) malformed(field, text);
    if (i < text.size()) {
        if (text[i] != '.') malformed(field, text);
        const std::size_t frac_start = ++i;
        while (i < text.size() && text[i] >= '0' && text[i] <= '9') ++i;
        const std::size_t frac = i - frac_start;
        if (frac == 0 || frac > 4 || i != text.size()) malformed(field, text);
    }
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) malformed(field, text);
    return value;
}

template <class Int>
Int parse_integer(std::string_view text, const char* field) {
    if (text.empty() || text.front() == '+') malformed(field, text);
    Int value{};
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) malformed(field, text);
    return value;
}

void validate_sender(std::string_view id) {
    if (id.empty()) throw CsiError(CsiErrorCode::MissingField, "sender_id is empty");
    for (char c : id)
        if (c == '|' || c == '\n' || c == '\r') malformed("sender_id", id);
}

}  // namespace

const char* to_string(CsiErrorCode code) {
    switch (code) {
        case CsiErrorCode::UnknownVersion: return "unknown version";
        case CsiErrorCode::MissingField: return "missing field";
        case CsiErrorCode::Malformed: return "malformed field";
        case CsiErrorCode::Inconsistent: return "inconsistent snr";
        case CsiErrorCode::SeqRegression: return "seq regression";
        case CsiErrorCode::Stale: return "stale csi";
    }
    return "csi error";
}

CsiMessage CsiMessage::make(std::string sender_id, std::uint64_t seq, std::int64_t timestamp_ms,
                            double tx_power_dbm, double rx_power_dbm, double noise_floor_dbm, double speed_mps) {
    if (!(speed_mps >= 0.0)) throw DomainError("CSI speed must be >= 0");
    CsiMessage m;
    m.sender_id = std::move(sender_id);
    m.seq = seq;
    m.timestamp_ms = timestamp_ms;
    m.tx_power_dbm = tx_power_dbm;
    m.rx_power_dbm = rx_power_dbm;
    m.noise_floor_dbm = noise_floor_dbm;
    m.snr_db = rx_power_dbm - noise_floor_dbm;
    m.speed_mps = speed_mps;
    return m;
}

std::string format_csi_decimal(double value) {
    if (!std::isfinite(value)) throw DomainError("CSI field must be finite");
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f", value);
    std::string s(buf);
    while (s.back() == '0') s.pop_back();
    if (s.back() == '.') s.pop_back();
    if (s == "-0") s = "0";
    return s;
}

std::string encode_csi(const CsiMessage& msg) {
    validate_sender(msg.sender_id);
    std::string out(kCsiVersionTag);
    auto add = [&out](const std::string& field) {
        out += '|';
        out += field;
    };
    add(msg.sender_id);
    add(std::to_string(msg.seq));
    add(std::to_string(msg.timestamp_ms));
    add(format_csi_decimal(msg.tx_power_dbm));
    add(format_csi_decimal(msg.rx_power_dbm));
    add(format_csi_decimal(msg.noise_floor_dbm));
    add(format_csi_decimal(msg.snr_db));
    add(format_csi_decimal(msg.speed_mps));
    return out;
}

CsiMessage parse_csi(std::string_view line) {
    if (!line.empty() && line.back() == '\n') line.remove_suffix(1);
    const auto fields = split_fields(line);
    if (fields[0] != kCsiVersionTag)
        throw CsiError(CsiErrorCode::UnknownVersion, "tag '" + std::string(fields[0]) + "'");
    if (fields.size() < kFieldCount)
        throw CsiError(CsiErrorCode::MissingField,
                       "expected " + std::to_string(kFieldCount) + " fields, got " + std::to_string(fields.size()));
    if (fields.size() > kFieldCount)
        throw CsiError(CsiErrorCode::Malformed, "trailing fields after speed_mps");
    for (std::size_t i = 1; i < fields.size(); ++i)
        if (fields[i].empty()) throw CsiError(CsiErrorCode::MissingField, "field " + std::to_string(i) + " is empty");

    validate_sender(fields[1]);
    CsiMessage m;
    m.sender_id = std::string(fields[1]);
    m.seq = parse_integer<std::uint64_t>(fields[2], "seq");
    m.timestamp_ms = parse_integer<std::int64_t>(fields[3], "timestamp_ms");
    m.tx_power_dbm = parse_decimal(fields[4], "tx_power_dbm");
    m.rx_power_dbm = parse_decimal(fields[5], "rx_power_dbm");
    m.noise_floor_dbm = parse_decimal(fields[6], "noise_floor_dbm");
    const double carried_snr = parse_decimal(fields[7], "snr_db");
    m.speed_mps = parse_decimal(fields[8], "speed_mps");
    if (m.speed_mps < 0.0) malformed("speed_mps", fields[8]);

    m.snr_db = m.rx_power_dbm - m.noise_floor_dbm;
    if (std::abs(carried_snr - m.snr_db) > kSnrConsistencyDb + 1e-9)
        throw CsiError(CsiErrorCode::Inconsistent, "snr_db " + std::string(fields[7]) + " but rx - noise = " +
                                                       format_csi_decimal(m.snr_db));
    return m;
}

CsiMessage CsiStream::parse(std::string_view line) {
    CsiMessage m = parse_csi(line);
    check_sequence(m);
    commit(m);
    return m;
}

void CsiStream::check_sequence(const CsiMessage& msg) const {
    const auto it = last_seq_.find(msg.sender_id);
    if (it != last_seq_.end() && msg.seq <= it->second)
        throw CsiError(CsiErrorCode::SeqRegression, msg.sender_id + " seq " + std::to_string(msg.seq) +
                                                        " after " + std::to_string(it->second));
}

void CsiStream::commit(const CsiMessage& msg) { last_seq_[msg.sender_id] = msg.seq; }

}  // namespace vsec

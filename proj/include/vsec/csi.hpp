#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>

namespace vsec {

/// Channel state report carrying the receiver-measured SNR.
struct CsiMessage {
    std::string sender_id;
    std::uint64_t seq = 0;
    std::int64_t timestamp_ms = 0;
    double tx_power_dbm = 0.0;
    double rx_power_dbm = 0.0;
    double noise_floor_dbm = 0.0;
    double snr_db = 0.0;  // always rx_power_dbm - noise_floor_dbm
    double speed_mps = 0.0;

    /// Builds a message with snr_db derived from the power fields.
    static CsiMessage make(std::string sender_id, std::uint64_t seq, std::int64_t timestamp_ms, double tx_power_dbm,
                           double rx_power_dbm, double noise_floor_dbm, double speed_mps);

    bool operator==(const CsiMessage&) const = default;
};

enum class CsiErrorCode { UnknownVersion, MissingField, Malformed, Inconsistent, SeqRegression, Stale };

const char* to_string(CsiErrorCode code);

class CsiError : public std::runtime_error {
public:
    CsiError(CsiErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
    CsiErrorCode code() const noexcept { return code_; }

private:
    CsiErrorCode code_;
};

inline constexpr std::string_view kCsiVersionTag = "CSI1";

// Wire format, one message per line:
//   CSI1|sender_id|seq|timestamp_ms|tx_power_dbm|rx_power_dbm|noise_floor_dbm|snr_db|speed_mps
// Decimal fields use '.' and at most 4 fractional digits.
std::string encode_csi(const CsiMessage& msg);

/// Stateless parse. The carried snr_db must agree with rx - noise to 0.01 dB;
/// the returned message holds the recomputed value.
CsiMessage parse_csi(std::string_view line);

/// Formats a decimal with at most 4 fractional digits, trailing zeros trimmed.
std::string format_csi_decimal(double value);

/// Parses a stream of CSI lines enforcing strictly increasing seq per sender.
class CsiStream {
public:
    CsiMessage parse(std::string_view line);
    /// Throws CsiError(SeqRegression) if msg.seq does not advance its sender's counter.
    void check_sequence(const CsiMessage& msg) const;
    void commit(const CsiMessage& msg);

private:
    std::map<std::string, std::uint64_t, std::less<>> last_seq_;
};

}  // namespace vsec

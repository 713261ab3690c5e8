#pragma once

#include <string>
#include <vector>

#include "centro/signal.hpp"

namespace centro {

struct EdfSignalHeader {
    std::string label;         // 16 ASCII chars
    std::string transducer;    // 80
    std::string dimension;     // 8
    double phys_min = 0.0;
    double phys_max = 0.0;
    int dig_min = 0;
    int dig_max = 0;
    std::string prefiltering;  // 80
    int samples_per_record = 0;
};

struct EdfHeader {
    std::string version;     // 8 ASCII chars
    std::string patient;     // 80
    std::string recording;   // 80
    std::string start_date;  // 8, dd.mm.yy
    std::string start_time;  // 8, hh.mm.ss
    long header_bytes = 0;   // must equal 256 * (1 + n_signals)
    long n_records = 0;
    double record_dur_s = 0.0;
    int n_signals = 0;
    std::vector<EdfSignalHeader> signals;
};

struct EdfRecording {
    EdfHeader header;
    std::vector<Trace> traces;  // one per signal, in physical units
};

/// Reads a plain EDF file (contiguous records, no annotation channel).
/// Samples are 16-bit little-endian two's-complement integers mapped to
/// physical units by
///   phys = phys_min + (dig - dig_min) * (phys_max - phys_min) / (dig_max - dig_min)
/// Errors carry the byte offset or record index of the offending field.
EdfRecording read_edf(const std::string& path);

}  // namespace centro

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "radcom/tensor.hpp"

namespace radcom::nn {

// "RCMW" parameter checkpoint.
//
//   offset 0   magic "RCMW"
//   4          u16 format version (little endian, currently 1)
//   6          u32 meta length, then meta bytes (JSON, model config)
//   ...        u32 tensor count
//   per tensor u16 name length, name bytes,
//              u8 rank, u32 extents[rank],
//              u64 payload offset (bytes, relative to payload start)
//   ...        payload: raw little-endian float32, tensors back to back
//
// Values are quantized to float32 on write; loading widens back to double,
// so save(load(f)) reproduces f byte-exactly.

struct Checkpoint {
    std::string meta_json;
    std::vector<std::pair<std::string, Tensor>> tensors;
};

void save_checkpoint(const std::string& path, const std::string& meta_json,
                     const std::vector<std::pair<std::string, const Tensor*>>& tensors);

Checkpoint load_checkpoint(const std::string& path);

}  // namespace radcom::nn

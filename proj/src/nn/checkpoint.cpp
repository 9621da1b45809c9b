#include "radcom/nn/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <fstream>

static_assert(std::endian::native == std::endian::little, "checkpoint io assumes a little-endian host");

namespace radcom::nn {

namespace {

template <typename T>
void put(std::ostream& os, T v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::istream& is, const char* what) {
    T v{};
    if (!is.read(reinterpret_cast<char*>(&v), sizeof(T)))
        throw std::runtime_error(std::string("checkpoint: truncated file while reading ") + what);
    return v;
}

}  // namespace

void save_checkpoint(const std::string& path, const std::string& meta_json,
                     const std::vector<std::pair<std::string, const Tensor*>>& tensors) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("checkpoint: cannot open " + path + " for writing");

    os.write("RCMW", 4);
    put<std::uint16_t>(os, 1);
    put<std::uint32_t>(os, static_cast<std::uint32_t>(meta_json.size()));
    os.write(meta_json.data(), static_cast<std::streamsize>(meta_json.size()));
    put<std::uint32_t>(os, static_cast<std::uint32_t>(tensors.size()));

    std::uint64_t offset = 0;
    for (const auto& [name, t] : tensors) {
        put<std::uint16_t>(os, static_cast<std::uint16_t>(name.size()));
        os.write(name.data(), static_cast<std::streamsize>(name.size()));
        put<std::uint8_t>(os, static_cast<std::uint8_t>(t->rank()));
        for (int e : t->shape) put<std::uint32_t>(os, static_cast<std::uint32_t>(e));
        put<std::uint64_t>(os, offset);
        offset += static_cast<std::uint64_t>(t->size()) * sizeof(float);
    }
    for (const auto& [name, t] : tensors) {
        (void)name;
        std::vector<float> buf(t->data.begin(), t->data.end());
        os.write(reinterpret_cast<const char*>(buf.data()),
                 static_cast<std::streamsize>(buf.size() * sizeof(float)));
    }
    if (!os) throw std::runtime_error("checkpoint: write failed for " + path);
}

Checkpoint load_checkpoint(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("checkpoint: cannot open " + path);

    char magic[4];
    if (!is.read(magic, 4) || std::memcmp(magic, "RCMW", 4) != 0)
        throw std::runtime_error("checkpoint: bad magic in " + path + " (expected RCMW)");
    const auto version = get<std::uint16_t>(is, "version");
    if (version != 1) throw std::runtime_error("checkpoint: unsupported version " + std::to_string(version));

    Checkpoint ckpt;
    const auto meta_len = get<std::uint32_t>(is, "meta length");
    ckpt.meta_json.resize(meta_len);
    if (meta_len && !is.read(ckpt.meta_json.data(), meta_len))
        throw std::runtime_error("checkpoint: truncated meta block");

    const auto count = get<std::uint32_t>(is, "tensor count");
    struct Entry {
        std::string name;
        std::vector<int> shape;
        std::uint64_t offset;
    };
    std::vector<Entry> manifest;
    manifest.reserve(count);
    for (std::uint32_t i = 0; i < count; ++i) {
        Entry e;
        const auto name_len = get<std::uint16_t>(is, "name length");
        e.name.resize(name_len);
        if (!is.read(e.name.data(), name_len)) throw std::runtime_error("checkpoint: truncated tensor name");
        const auto rank = get<std::uint8_t>(is, "rank");
        for (int d = 0; d < rank; ++d) e.shape.push_back(static_cast<int>(get<std::uint32_t>(is, "extent")));
        e.offset = get<std::uint64_t>(is, "offset");
        manifest.push_back(std::move(e));
    }

    const std::streampos payload_start = is.tellg();
    for (auto& e : manifest) {
        Tensor t(e.shape);
        std::vector<float> buf(static_cast<std::size_t>(t.size()));
        is.seekg(payload_start + static_cast<std::streamoff>(e.offset));
        if (!is.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(buf.size() * sizeof(float))))
            throw std::runtime_error("checkpoint: truncated payload for tensor " + e.name);
        for (std::size_t i = 0; i < buf.size(); ++i) t.data[i] = static_cast<double>(buf[i]);
        ckpt.tensors.emplace_back(std::move(e.name), std::move(t));
    }
    return ckpt;
}

}  // namespace radcom::nn

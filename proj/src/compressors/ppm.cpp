#include "ncdlab/compressors/ppm.hpp"

#include <array>
#include <cmath>
#include <string>

#include "ncdlab/common/error.hpp"
#include "ncdlab/compressors/arithmetic.hpp"

namespace ncdlab::codec {
namespace {

constexpr std::uint32_t kNone = 0xffffffffu;
constexpr std::uint32_t kUnknown = 0xfffffffeu;

std::uint64_t hash_key(std::uint64_t k) {
  k ^= k >> 33;
  k *= 0xff51afd7ed558ccdULL;
  k ^= k >> 33;
  return k;
}

std::uint64_t order_mask(int order) {
  return order >= 8 ? ~std::uint64_t{0} : (std::uint64_t{1} << (8 * order)) - 1;
}

}  // namespace

PpmModel::PpmModel(int order) : order_(order) {
  if (order < 0 || order > kPpmMaxOrder)
    throw ValidationError("PPM order must lie in [0, " + std::to_string(kPpmMaxOrder) + "]");
  tables_.resize(static_cast<std::size_t>(order) + 1);
  for (auto& t : tables_) {
    t.keys.assign(64, 0);
    t.slots.assign(64, kNone);
  }
  hint_.fill(kUnknown);
  bind_contexts();
}

std::uint32_t PpmModel::lookup(int order, std::uint64_t key, bool create) {
  Table& t = tables_[order];
  std::size_t mask = t.keys.size() - 1;
  std::size_t i = hash_key(key) & mask;
  while (t.slots[i] != kNone) {
    if (t.keys[i] == key) return t.slots[i];
    i = (i + 1) & mask;
  }
  if (!create) return kNone;
  if ((t.used + 1) * 2 > t.keys.size()) {
    Table grown;
    grown.keys.assign(t.keys.size() * 2, 0);
    grown.slots.assign(t.keys.size() * 2, kNone);
    grown.used = t.used;
    const std::size_t gmask = grown.keys.size() - 1;
    for (std::size_t j = 0; j < t.keys.size(); ++j) {
      if (t.slots[j] == kNone) continue;
      std::size_t k = hash_key(t.keys[j]) & gmask;
      while (grown.slots[k] != kNone) k = (k + 1) & gmask;
      grown.keys[k] = t.keys[j];
      grown.slots[k] = t.slots[j];
    }
    t = std::move(grown);
    mask = t.keys.size() - 1;
    i = hash_key(key) & mask;
    while (t.slots[i] != kNone) i = (i + 1) & mask;
  }
  t.keys[i] = key;
  t.slots[i] = static_cast<std::uint32_t>(contexts_.size());
  ++t.used;
  contexts_.push_back(Context{kNone, kNone});
  return t.slots[i];
}

std::uint32_t PpmModel::find(int order, std::uint64_t key) const {
  const Table& t = tables_[order];
  const std::size_t mask = t.keys.size() - 1;
  for (std::size_t i = hash_key(key) & mask; t.slots[i] != kNone; i = (i + 1) & mask)
    if (t.keys[i] == key) return t.slots[i];
  return kNone;
}

// Resolves (creating if needed) the context of every order that the current
// history is long enough to define.
void PpmModel::bind_contexts() {
  for (int o = 0; o <= order_; ++o)
    active_[o] = static_cast<std::size_t>(o) > seen_ ? kNone : lookup(o, history_ & order_mask(o), true);
}

void PpmModel::update(std::uint8_t symbol) {
  for (int o = 0; o <= order_; ++o) {
    if (active_[o] == kNone) break;
    Context& ctx = contexts_[active_[o]];
    std::uint32_t e = hint_[o];
    if (e == kUnknown) {
      e = ctx.head;
      while (e != kNone && entries_[e].symbol != symbol) e = entries_[e].next;
    }
    if (e != kNone) {
      ++entries_[e].count;
    } else {
      const auto fresh = static_cast<std::uint32_t>(entries_.size());
      entries_.push_back(Entry{1, kNone, symbol});
      if (ctx.tail == kNone) ctx.head = fresh;
      else entries_[ctx.tail].next = fresh;
      ctx.tail = fresh;
      ++ctx.distinct;
    }
    ++ctx.total;
  }
  history_ = history_ << 8 | symbol;
  ++seen_;
  hint_.fill(kUnknown);
  bind_contexts();
}

template <class Emit>
void PpmModel::code(std::uint8_t symbol, Emit&& emit) {
  std::array<bool, 256> excluded{};
  std::uint32_t excluded_count = 0;
  bool any_excluded = false;

  for (int o = order_; o >= 0; --o) {
    if (active_[o] == kNone) continue;
    const Context& ctx = contexts_[active_[o]];
    hint_[o] = kNone;
    if (ctx.distinct == 0) continue;
    std::uint32_t total = 0, distinct = 0, below = 0, symbol_count = 0;
    if (!any_excluded) {
      total = ctx.total;
      distinct = ctx.distinct;
      for (auto e = ctx.head; e != kNone; e = entries_[e].next) {
        if (entries_[e].symbol == symbol) {
          symbol_count = entries_[e].count;
          hint_[o] = e;
          break;
        }
        below += entries_[e].count;
      }
    } else {
      for (auto e = ctx.head; e != kNone; e = entries_[e].next) {
        const Entry& en = entries_[e];
        if (en.symbol == symbol) hint_[o] = e;
        if (excluded[en.symbol]) continue;
        if (en.symbol == symbol) {
          symbol_count = en.count;
          below = total;
        }
        total += en.count;
        ++distinct;
      }
      if (distinct == 0) continue;
    }
    if (symbol_count) {
      emit(below, below + symbol_count, total + distinct);
      update(symbol);
      return;
    }
    emit(total, total + distinct, total + distinct);
    for (auto e = ctx.head; e != kNone; e = entries_[e].next) {
      if (!excluded[entries_[e].symbol]) {
        excluded[entries_[e].symbol] = true;
        ++excluded_count;
      }
    }
    any_excluded = true;
  }

  std::uint32_t rank = 0;
  for (unsigned s = 0; s < symbol; ++s) rank += !excluded[s];
  emit(rank, rank + 1, 256 - excluded_count);
  update(symbol);
}

double PpmModel::encode(std::uint8_t symbol, ArithmeticEncoder* coder) {
  double bits = 0.0;
  code(symbol, [&](std::uint32_t lo, std::uint32_t hi, std::uint32_t total) {
    bits += std::log2(static_cast<double>(total) / static_cast<double>(hi - lo));
    if (coder) coder->encode(lo, hi, total);
  });
  return bits;
}

void PpmModel::encode_only(std::uint8_t symbol, ArithmeticEncoder& coder) {
  code(symbol, [&](std::uint32_t lo, std::uint32_t hi, std::uint32_t total) { coder.encode(lo, hi, total); });
}

std::uint8_t PpmModel::decode(ArithmeticDecoder& coder) {
  std::array<bool, 256> excluded{};
  std::uint32_t excluded_count = 0;

  for (int o = order_; o >= 0; --o) {
    if (active_[o] == kNone) continue;
    const Context& ctx = contexts_[active_[o]];
    std::uint32_t total = 0, distinct = 0;
    for (auto e = ctx.head; e != kNone; e = entries_[e].next) {
      if (excluded[entries_[e].symbol]) continue;
      total += entries_[e].count;
      ++distinct;
    }
    if (distinct == 0) continue;
    const std::uint32_t t = coder.target(total + distinct);
    if (t < total) {
      std::uint32_t cum = 0;
      for (auto e = ctx.head; e != kNone; e = entries_[e].next) {
        const Entry& en = entries_[e];
        if (excluded[en.symbol]) continue;
        if (t < cum + en.count) {
          coder.consume(cum, cum + en.count, total + distinct);
          const std::uint8_t symbol = en.symbol;
          update(symbol);
          return symbol;
        }
        cum += en.count;
      }
    }
    coder.consume(total, total + distinct, total + distinct);
    for (auto e = ctx.head; e != kNone; e = entries_[e].next) {
      if (!excluded[entries_[e].symbol]) {
        excluded[entries_[e].symbol] = true;
        ++excluded_count;
      }
    }
  }

  const std::uint32_t t = coder.target(256 - excluded_count);
  std::uint32_t rank = 0;
  for (unsigned s = 0; s < 256; ++s) {
    if (excluded[s]) continue;
    if (rank == t) {
      coder.consume(rank, rank + 1, 256 - excluded_count);
      update(static_cast<std::uint8_t>(s));
      return static_cast<std::uint8_t>(s);
    }
    ++rank;
  }
  throw CorruptStreamError("PPM order(-1) decode failed");
}

std::uint32_t PpmModel::count(std::string_view context, std::uint8_t symbol) const {
  if (context.size() > static_cast<std::size_t>(order_)) return 0;
  std::uint64_t key = 0;
  for (unsigned char c : context) key = key << 8 | c;
  const auto idx = find(static_cast<int>(context.size()), key);
  if (idx == kNone) return 0;
  for (auto e = contexts_[idx].head; e != kNone; e = entries_[e].next)
    if (entries_[e].symbol == symbol) return entries_[e].count;
  return 0;
}

double ppm_estimate_bits(ByteView data, int order) {
  PpmModel model(order);
  double bits = 0.0;
  for (auto b : data) bits += model.encode(b);
  return bits;
}

Bytes ppm_encode(ByteView data, int order) {
  Bytes out;
  PpmModel model(order);
  {
    ArithmeticEncoder coder(out);
    for (auto b : data) model.encode_only(b, coder);
    coder.finish();
  }
  return out;
}

Bytes ppm_decode(ByteView payload, std::size_t size, int order) {
  PpmModel model(order);
  ArithmeticDecoder coder(payload);
  Bytes out;
  out.reserve(size);
  for (std::size_t i = 0; i < size; ++i) out.push_back(model.decode(coder));
  if (coder.overran()) throw CorruptStreamError("truncated PPM stream");
  return out;
}

}  // namespace ncdlab::codec

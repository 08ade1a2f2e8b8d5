"""
Tagged 64-bit words.

The two low bits of every managed word are a tag; the upper 62 bits are the
payload. A VALUE payload is a user value (a key, a counter); a reference payload
names a descriptor as ``seq << SLOT_BITS | slot``.
"""

from enum import IntEnum
from typing import NamedTuple

from hoodhash.errors import ContractViolation

TAG_BITS = 2
TAG_MASK = (1 << TAG_BITS) - 1
PAYLOAD_BITS = 64 - TAG_BITS
PAYLOAD_LIMIT = 1 << PAYLOAD_BITS
WORD_MASK = (1 << 64) - 1

SLOT_BITS = 20
SLOT_MASK = (1 << SLOT_BITS) - 1
SEQ_MASK = (1 << (PAYLOAD_BITS - SLOT_BITS)) - 1


class Tag(IntEnum):
    VALUE = 0b00
    KCAS_REF = 0b01
    RDCSS_REF = 0b10


class TaggedWord(NamedTuple):
    tag: Tag
    payload: int

    @property
    def raw(self) -> int:
        return encode(self)

    @property
    def is_value(self) -> bool:
        return self.tag is Tag.VALUE


class DescriptorRef(NamedTuple):
    slot: int
    seq: int


def encode(word: TaggedWord) -> int:
    tag, payload = word
    if not 0 <= payload < PAYLOAD_LIMIT:
        raise ContractViolation(f"payload {payload} does not fit in {PAYLOAD_BITS} bits")
    return (payload << TAG_BITS) | int(Tag(tag))


def decode(raw: int) -> TaggedWord:
    tag = raw & TAG_MASK
    if tag == TAG_MASK:
        raise ContractViolation(f"word {raw:#x} carries the reserved tag 0b11")
    return TaggedWord(Tag(tag), raw >> TAG_BITS)


def encode_value(v: int) -> int:
    """Raw VALUE word for ``v``; ``v`` must be in ``[0, 2**62)``."""
    if not 0 <= v < PAYLOAD_LIMIT:
        raise ContractViolation(f"value {v} is outside [0, 2**{PAYLOAD_BITS})")
    return v << TAG_BITS


def value_of(raw: int) -> int:
    if raw & TAG_MASK:
        raise ContractViolation(f"word {raw:#x} is not a VALUE word")
    return raw >> TAG_BITS


def tag_of(raw: int) -> int:
    return raw & TAG_MASK


def is_value(raw: int) -> bool:
    return not raw & TAG_MASK


def make_ref(tag: Tag, slot: int, seq: int) -> int:
    if tag is Tag.VALUE:
        raise ContractViolation("descriptor references need a reference tag")
    if not 0 <= slot <= SLOT_MASK:
        raise ContractViolation(f"thread slot {slot} does not fit in {SLOT_BITS} bits")
    return ((((seq & SEQ_MASK) << SLOT_BITS) | slot) << TAG_BITS) | int(tag)


def ref_of(raw: int) -> DescriptorRef:
    payload = raw >> TAG_BITS
    return DescriptorRef(payload & SLOT_MASK, payload >> SLOT_BITS)

from .descriptors import KCasDescriptor, KCasEntry, RdcssDescriptor, Status
from .engine import KCas, KCasFault
from .memory import WordArray
from .words import PAYLOAD_LIMIT, DescriptorRef, Tag, TaggedWord, decode, encode, encode_value, is_value, value_of

__all__ = [
    "KCas",
    "KCasFault",
    "KCasDescriptor",
    "KCasEntry",
    "RdcssDescriptor",
    "Status",
    "WordArray",
    "Tag",
    "TaggedWord",
    "DescriptorRef",
    "PAYLOAD_LIMIT",
    "decode",
    "encode",
    "encode_value",
    "is_value",
    "value_of",
]

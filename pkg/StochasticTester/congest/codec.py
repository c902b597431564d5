from typing import Dict, List, Mapping, Sequence, Tuple

from .models import DecodedMessage

FieldSpec = Sequence[Tuple[str, int]]


class MessageCodec:
    """
    Fixed-width bit packing: a tag selecting the message kind, then the kind's
    unsigned fields, most significant first.
    """

    def __init__(self, schemas: Mapping[str, FieldSpec]):
        if not schemas:
            raise ValueError('a codec needs at least one message kind')
        self.kinds: List[str] = list(schemas)
        self.schemas: Dict[str, Tuple[Tuple[str, int], ...]] = {k: tuple(v) for k, v in schemas.items()}
        self.tag_bits = max(1, (len(self.kinds) - 1).bit_length())
        self._tags = {kind: i for i, kind in enumerate(self.kinds)}

    def bit_len(self, kind: str) -> int:
        return self.tag_bits + sum(width for _, width in self.schemas[kind])

    def max_bit_len(self) -> int:
        return max(self.bit_len(kind) for kind in self.kinds)

    def encode(self, kind: str, **values: int) -> Tuple[int, int]:
        """
        Pack one message
            :param kind: message kind
            :param values: every field of the kind, unsigned and within its width
            :return: (payload, bit_len)
        """
        payload = self._tags[kind]
        for name, width in self.schemas[kind]:
            value = int(values[name])
            if value < 0 or value >= 1 << width:
                raise ValueError(f'{kind}.{name}={value} does not fit in {width} bits')
            payload = (payload << width) | value
        return payload, self.bit_len(kind)

    def decode(self, payload: int, bit_len: int) -> DecodedMessage:
        tag = payload >> (bit_len - self.tag_bits)
        if tag >= len(self.kinds):
            raise ValueError(f'unknown message tag {tag}')
        kind = self.kinds[tag]
        if bit_len != self.bit_len(kind):
            raise ValueError(f'{kind} expects {self.bit_len(kind)} bits, got {bit_len}')
        fields = {}
        shift = bit_len - self.tag_bits
        for name, width in self.schemas[kind]:
            shift -= width
            fields[name] = (payload >> shift) & ((1 << width) - 1)
        return DecodedMessage(kind, fields)

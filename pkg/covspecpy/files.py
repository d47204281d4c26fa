import msgspec

from typing import List, Optional, Tuple, Union

from .errors import MalformedFile, ParameterError
from .graphs import EdgePath, MetricGraph
from .homotopy import EdgePoint, GridHomotopy
from .numbers import format_rational, to_rational
from .spectra import Spectrum, SpectrumValue, SymbolicChain, TruncationFamily
from .utils import CERTIFIED


Vertex = Union[int, str]


class PathSpec(msgspec.Struct):
    start: Vertex
    steps: List[Tuple[int, int]] = msgspec.field(default_factory=list)


class GraphFile(msgspec.Struct, tag='graph'):
    vertices: List[Vertex]
    edges: List[Tuple[Vertex, Vertex, str]]
    basepoint: Optional[Vertex] = None
    faces: List[PathSpec] = msgspec.field(default_factory=list)
    labels: List[Tuple[Vertex, str]] = msgspec.field(default_factory=list)
    name: Optional[str] = None


class PlainGraphFile(msgspec.Struct, forbid_unknown_fields=True):
    """A graph object without a ``type`` tag, as written by other tools."""

    vertices: List[Vertex]
    edges: List[Tuple[Vertex, Vertex, Union[int, str]]]
    basepoint: Optional[Vertex] = None
    faces: List[PathSpec] = msgspec.field(default_factory=list)
    labels: List[Tuple[Vertex, str]] = msgspec.field(default_factory=list)
    name: Optional[str] = None


class ChainSpec(msgspec.Struct):
    offset: str
    scale: str
    shift: str = '0/1'
    start: int = 1


class FamilyFile(msgspec.Struct, tag='family'):
    levels: List[GraphFile]
    scope_radii: List[str]
    chains: List[ChainSpec] = msgspec.field(default_factory=list)
    inclusions: Optional[List[List[Tuple[Vertex, Vertex]]]] = None
    name: Optional[str] = None
    slipping_limit: Optional[str] = None


class GridFile(msgspec.Struct, tag='grid'):
    loop: PathSpec
    columns: List[List[Vertex]]
    centers: List[Tuple[int, int, Vertex]] = msgspec.field(default_factory=list)
    edge_centers: List[Tuple[int, int, int, str]] = msgspec.field(default_factory=list)
    delta: Optional[str] = None


class ValueSpec(msgspec.Struct):
    value: str
    certificate: str = CERTIFIED
    mesh_artifact: bool = False
    semiclosure: bool = False
    witness: Union[List[int], str, None] = None


class SpectrumFile(msgspec.Struct, tag='spectrum'):
    kind: str
    cap: str
    values: List[ValueSpec]
    R: Optional[str] = None
    budget: Optional[int] = None


class ExperimentConfig(msgspec.Struct, tag='experiment'):
    experiment: str
    schedule: Optional[List[str]] = None
    R1: Optional[str] = None
    R2: Optional[str] = None
    cap: Optional[str] = None
    out: Optional[str] = None


AnyFile = Union[GraphFile, FamilyFile, GridFile, SpectrumFile, ExperimentConfig]


def _path_spec(p):
    return PathSpec(p.start, [tuple(s) for s in p.steps])


def graph_to_file(g):
    return GraphFile(vertices=list(g.vertices),
                     edges=[(u, v, format_rational(length)) for u, v, length in g.edges],
                     basepoint=g.basepoint,
                     faces=[_path_spec(f) for f in g.faces],
                     labels=sorted(g.labels.items(), key=lambda t: str(t[0])),
                     name=g.name)


def graph_from_file(f):
    return MetricGraph(f.vertices, [(u, v, to_rational(x)) for u, v, x in f.edges],
                       basepoint=f.basepoint,
                       faces=[EdgePath(p.start, [tuple(s) for s in p.steps]) for p in f.faces],
                       name=f.name, labels=dict(f.labels))


def family_to_file(fam):
    return FamilyFile(levels=[graph_to_file(g) for g in fam.levels],
                      scope_radii=[format_rational(r) for r in fam.scope_radii],
                      chains=[ChainSpec(format_rational(c.offset), format_rational(c.scale),
                                        format_rational(c.shift), c.start)
                              for c in fam.chains],
                      inclusions=[sorted(m.items(), key=lambda t: str(t[0]))
                                  for m in fam.inclusions],
                      name=fam.name,
                      slipping_limit=None if fam.slipping_limit is None
                      else format_rational(fam.slipping_limit))


def family_from_file(f):
    return TruncationFamily([graph_from_file(g) for g in f.levels], f.scope_radii,
                            chains=[SymbolicChain(c.offset, c.scale, c.shift, c.start)
                                    for c in f.chains],
                            inclusions=None if f.inclusions is None
                            else [dict(m) for m in f.inclusions],
                            name=f.name, slipping_limit=f.slipping_limit)


def grid_to_file(H, delta=None):
    return GridFile(loop=_path_spec(H.loop),
                    columns=[list(c) for c in H.columns],
                    centers=[(x, y, c) for (x, y), c in sorted(H.centers.items())
                             if not isinstance(c, EdgePoint)],
                    edge_centers=[(x, y, c.edge, format_rational(c.offset))
                                  for (x, y), c in sorted(H.centers.items())
                                  if isinstance(c, EdgePoint)],
                    delta=None if delta is None else format_rational(delta))


def grid_from_file(f):
    loop = EdgePath(f.loop.start, [tuple(s) for s in f.loop.steps])
    centers = {(x, y): c for x, y, c in f.centers}
    centers.update({(x, y): EdgePoint(i, t) for x, y, i, t in f.edge_centers})
    return GridHomotopy(loop, f.columns, centers)


def spectrum_to_file(s):
    values = []
    for v in s.values:
        witness = list(v.witness) if isinstance(v.witness, tuple) else v.witness
        values.append(ValueSpec(format_rational(v.value), v.level, v.mesh_artifact,
                                v.semiclosure, witness))
    return SpectrumFile(kind=s.kind, cap=format_rational(s.cap), values=values,
                        R=None if s.R is None else format_rational(s.R), budget=s.budget)


def spectrum_from_file(f):
    values = [SpectrumValue(to_rational(v.value), v.certificate, v.mesh_artifact,
                            tuple(v.witness) if isinstance(v.witness, list) else v.witness,
                            v.semiclosure)
              for v in f.values]
    return Spectrum(values, f.kind, to_rational(f.cap),
                    R=None if f.R is None else to_rational(f.R), budget=f.budget)


_TO_FILE = [(MetricGraph, graph_to_file), (TruncationFamily, family_to_file),
            (GridHomotopy, grid_to_file), (Spectrum, spectrum_to_file)]

_FROM_FILE = {GraphFile: graph_from_file, PlainGraphFile: graph_from_file,
              FamilyFile: family_from_file, GridFile: grid_from_file,
              SpectrumFile: spectrum_from_file, ExperimentConfig: lambda f: f}


def to_file(obj):
    """Convert a graph, family, grid or spectrum into its file struct."""
    if isinstance(obj, msgspec.Struct):
        return obj
    for kind, convert in _TO_FILE:
        if isinstance(obj, kind):
            return convert(obj)
    raise ParameterError('cannot store an object of type `{}`'.format(type(obj).__name__))


def from_file(f):
    return _FROM_FILE[type(f)](f)


def _codec(path):
    if path is not None and str(path).endswith('.msgpack'):
        return msgspec.msgpack
    return msgspec.json


def dumps(obj, path=None):
    """
    Encode an object as JSON (or msgpack when ``path`` ends in ``.msgpack``).

    Rationals are always written as ``"num/den"`` strings.
    """
    return _codec(path).encode(to_file(obj))


def loads(data, path=None, raw=False):
    """
    Decode any file this package writes. The ``type`` tag picks the struct; an object with no
    tag is read as a plain graph.

    Parameters
    ----------
    data : bytes
    path : str or None
        Only used to pick the codec.
    raw : bool
        If True, return the file struct instead of the rebuilt object.
    """
    codec = _codec(path)
    try:
        try:
            f = codec.decode(data, type=AnyFile)
        except msgspec.ValidationError as tagged:
            try:
                f = codec.decode(data, type=PlainGraphFile)
            except msgspec.ValidationError:
                raise tagged
    except (msgspec.DecodeError, msgspec.ValidationError) as e:
        raise MalformedFile('could not read {}: {}'.format(path or 'input', e))
    return f if raw else from_file(f)


def save(obj, path):
    with open(path, 'wb') as fh:
        fh.write(dumps(obj, path))
    return path


def load(path, raw=False):
    with open(path, 'rb') as fh:
        return loads(fh.read(), path, raw=raw)


def load_graph(path):
    obj = load(path)
    if not isinstance(obj, MetricGraph):
        raise MalformedFile('`{}` does not hold a graph'.format(path))
    return obj


def load_family(path):
    """Load a family, reading a single graph as a one-level family with ``R`` its diameter."""
    obj = load(path)
    if isinstance(obj, MetricGraph):
        return TruncationFamily([obj], [max(obj.diameter(), to_rational(1))], name=obj.name)
    if not isinstance(obj, TruncationFamily):
        raise MalformedFile('`{}` does not hold a family'.format(path))
    return obj


def write_table(df, path=None, fmt='text'):
    """
    Render a table as CSV or aligned text; write it to ``path`` when given.

    Returns
    -------
    str
    """
    if fmt not in ('text', 'csv'):
        raise ParameterError('format must be `text` or `csv`')
    if fmt == 'csv':
        out = df.to_csv(index=False)
    else:
        out = (df.to_string(index=False) if len(df) else '(empty)') + '\n'
    if path is not None:
        with open(path, 'w') as fh:
            fh.write(out)
    return out

"""Hierarchical single-switch scanning machine.

The selection set is a tree with two top-level groups, the board and
the menu.  The board group nests horizontal bands of rows, then rows,
then the editable cells of that row; clue cells are not in the tree at
all, so they can never be committed to.  Choosing a cell arms a
separate numeric keypad subtree (keys 1..n plus ERASE and CANCEL);
choosing a key commits and the cursor returns to the board-group level.

Time is externalized: the machine consumes explicit ``tick`` and
``press`` events and is a pure function of (state, tree, config), which
makes transcripts replayable byte for byte.  Cursor rules:

* Activation highlights nothing; the first tick highlights the first
  item of the level.  Each tick advances to the next sibling, wrapping.
* A wrap increments the level's cycle count.  When it reaches
  ``repeat_cycles`` the cursor ascends one level instead (after a
  timeout in the keypad the pending cell is cancelled and the cursor
  returns to the board-group level); ascending past the root stops the
  scan.
* A press descends into the highlighted item, with its first child
  highlighted immediately.  A press while inactive restarts the scan at
  the root.  A press before any tick acts on the level's first item.

Events are plain dicts so transcripts serialize canonically:
``{"event": "highlight"|"ascend"|"stopped"|"noop"|"action", ...}``;
highlight/ascend carry the node id, highlight also a sound-cue flag,
action events carry an action dict (see ``press``).
"""

from __future__ import annotations

from dataclasses import dataclass

from .engine.game import GameState
from .engine.grid import Position
from .jsonio import dumps_jsonl, loads_jsonl

MENU_ITEMS = ("new", "clear", "solve", "undo", "settings", "exit")

SETTING_PALETTE = ("yellow", "orange", "red", "green", "blue", "violet")

# (field, scannable value choices) in scan order; the settings tree adds
# a final "done" item that leaves the settings scan
SETTINGS_SCAN_OPTIONS = (
    ("difficulty", ("easy", "medium", "hard")),
    ("order", (1, 2, 3, 4, 5)),
    ("scan_dwell_ms", (200, 500, 800, 1200, 2000, 5000)),
    ("scan_repeat_cycles", (1, 2, 3, 4, 5, 6, 7, 8, 9, 10)),
    ("scan_sound", (True, False)),
    ("scan_highlight_color", SETTING_PALETTE),
    ("row_col_highlight_color", SETTING_PALETTE),
    ("input_device", ("pointer", "switch", "space-key", "voice")),
)

DWELL_MS_RANGE = (200, 5000)
REPEAT_CYCLES_RANGE = (1, 10)


@dataclass(frozen=True)
class ScanNode:
    id: str
    kind: str  # group | subgroup | row | cell | keypad-key | menu-item | setting-item | setting-value
    children: tuple["ScanNode", ...] = ()
    payload: object = None

    @property
    def is_leaf(self) -> bool:
        return not self.children


class ScanTree:
    """Immutable node tree plus an id index.

    The main tree's root has exactly the board group and the menu group
    as children and carries the keypad as a side subtree; the settings
    tree is a flat item scan without a keypad.
    """

    def __init__(self, root: ScanNode, keypad: ScanNode | None = None):
        self.root = root
        self.keypad = keypad
        self._index: dict[str, ScanNode] = {}
        for top in (root, keypad):
            if top is not None:
                self._add(top)

    def _add(self, node: ScanNode) -> None:
        if node.id in self._index:
            raise ValueError(f"duplicate scan node id {node.id!r}")
        self._index[node.id] = node
        for child in node.children:
            self._add(child)

    def node(self, node_id: str) -> ScanNode:
        return self._index[node_id]

    def has_node(self, node_id: str) -> bool:
        return node_id in self._index


@dataclass(frozen=True)
class ScanConfig:
    dwell_ms: int = 800
    repeat_cycles: int = 2
    sound_enabled: bool = True
    highlight_color: str = "yellow"

    def __post_init__(self):
        lo, hi = DWELL_MS_RANGE
        if not (lo <= self.dwell_ms <= hi):
            raise ValueError(f"dwell_ms must be in {lo}..{hi}, got {self.dwell_ms}")
        lo, hi = REPEAT_CYCLES_RANGE
        if not (lo <= self.repeat_cycles <= hi):
            raise ValueError(f"repeat_cycles must be in {lo}..{hi}, got {self.repeat_cycles}")


@dataclass(frozen=True)
class ScanState:
    """Cursor over a tree: a stack of (parent node id, highlighted child index).

    Index -1 means the level was entered but nothing is highlighted yet
    (fresh activation).  ``pending`` holds the cell position while the
    keypad scan is armed.
    """

    active: bool
    path: tuple[tuple[str, int], ...] = ()
    cycles: int = 0
    pending: Position | None = None


INACTIVE = ScanState(active=False)


def start_state(tree: ScanTree) -> ScanState:
    return ScanState(active=True, path=((tree.root.id, -1),), cycles=0, pending=None)


def highlighted_node_id(state: ScanState, tree: ScanTree) -> str | None:
    if not state.active or not state.path:
        return None
    parent_id, idx = state.path[-1]
    if idx < 0:
        return None
    children = tree.node(parent_id).children
    if idx >= len(children):
        return None
    return children[idx].id


# ---------------------------------------------------------------- events

def _highlight(node_id: str, config: ScanConfig) -> dict:
    return {"event": "highlight", "node": node_id, "sound": config.sound_enabled}


def _action(action: dict) -> dict:
    return {"event": "action", "action": action}


_NOOP = {"event": "noop"}
_STOPPED = {"event": "stopped"}


# ------------------------------------------------------------- machine

def tick(state: ScanState, tree: ScanTree, config: ScanConfig) -> tuple[ScanState, list[dict]]:
    """Advance the highlight; wraps count toward the level timeout."""
    if not state.active:
        return state, [dict(_NOOP)]
    parent_id, idx = state.path[-1]
    siblings = tree.node(parent_id).children
    if not siblings:
        return _ascend(state, tree)
    nxt = idx + 1
    if nxt >= len(siblings):
        wrapped_cycles = state.cycles + 1
        if wrapped_cycles >= config.repeat_cycles:
            return _ascend(state, tree)
        new_state = ScanState(
            active=True,
            path=state.path[:-1] + ((parent_id, 0),),
            cycles=wrapped_cycles,
            pending=state.pending,
        )
        return new_state, [_highlight(siblings[0].id, config)]
    new_state = ScanState(
        active=True,
        path=state.path[:-1] + ((parent_id, nxt),),
        cycles=state.cycles,
        pending=state.pending,
    )
    return new_state, [_highlight(siblings[nxt].id, config)]


def _ascend(state: ScanState, tree: ScanTree) -> tuple[ScanState, list[dict]]:
    """Level timeout: go up one level, or stop when already at the top."""
    in_keypad = tree.keypad is not None and state.path[0][0] == tree.keypad.id
    if in_keypad:
        # abandoning the keypad cancels the pending cell
        new_state = ScanState(active=True, path=((tree.root.id, 0),), cycles=0, pending=None)
        return new_state, [{"event": "ascend", "node": tree.root.children[0].id}]
    if len(state.path) == 1:
        return INACTIVE, [dict(_STOPPED)]
    parent_path = state.path[:-1]
    pid, pidx = parent_path[-1]
    node = tree.node(pid).children[pidx]
    new_state = ScanState(active=True, path=parent_path, cycles=0, pending=state.pending)
    return new_state, [{"event": "ascend", "node": node.id}]


def press(state: ScanState, tree: ScanTree, config: ScanConfig) -> tuple[ScanState, list[dict]]:
    """Select the highlighted item.

    Actions produced (as dicts under an ``action`` event):
    ``start-scan`` (press while inactive), ``commit-place``/
    ``commit-erase``/``commit-cancel`` (keypad keys, with the pending
    cell's row/col), ``menu`` with the item name, and ``set-setting``
    with field and value.
    """
    if not state.active:
        return start_state(tree), [_action({"kind": "start-scan"})]
    parent_id, idx = state.path[-1]
    siblings = tree.node(parent_id).children
    if not siblings:
        return state, [dict(_NOOP)]
    eff = max(idx, 0)
    node = siblings[eff]

    if node.children:
        new_path = state.path[:-1] + ((parent_id, eff), (node.id, 0))
        new_state = ScanState(active=True, path=new_path, cycles=0, pending=state.pending)
        return new_state, [_highlight(node.children[0].id, config)]

    if node.kind == "cell":
        if tree.keypad is None:
            return state, [dict(_NOOP)]
        pos = node.payload
        new_state = ScanState(
            active=True, path=((tree.keypad.id, 0),), cycles=0, pending=pos
        )
        return new_state, [_highlight(tree.keypad.children[0].id, config)]

    if node.kind == "keypad-key":
        pos = state.pending
        if pos is None:
            return state, [dict(_NOOP)]
        key = node.payload
        if key == "cancel":
            action = {"kind": "commit-cancel", "row": pos.row, "col": pos.col}
        elif key == "erase":
            action = {"kind": "commit-erase", "row": pos.row, "col": pos.col}
        else:
            action = {"kind": "commit-place", "row": pos.row, "col": pos.col, "value": key}
        new_state = ScanState(active=True, path=((tree.root.id, 0),), cycles=0, pending=None)
        return new_state, [_action(action), _highlight(tree.root.children[0].id, config)]

    if node.kind == "menu-item":
        action = {"kind": "menu", "item": node.payload}
        new_state = ScanState(active=True, path=((tree.root.id, 0),), cycles=0, pending=None)
        return new_state, [_action(action), _highlight(tree.root.children[0].id, config)]

    if node.kind == "setting-value":
        field, value = node.payload
        action = {"kind": "set-setting", "field": field, "value": value}
        parent_path = state.path[:-1]
        pid, pidx = parent_path[-1]
        item = tree.node(pid).children[pidx]
        new_state = ScanState(active=True, path=parent_path, cycles=0, pending=state.pending)
        return new_state, [_action(action), _highlight(item.id, config)]

    return state, [dict(_NOOP)]


def simulate(config: ScanConfig, tree: ScanTree, script) -> list[dict]:
    """Run a tick/press script from a fresh active scan; returns the transcript."""
    state = start_state(tree)
    transcript: list[dict] = []
    for step in script:
        kind = step.get("event") if isinstance(step, dict) else step
        if kind == "tick":
            state, events = tick(state, tree, config)
        elif kind == "press":
            state, events = press(state, tree, config)
        else:
            raise ValueError(f"script events must be 'tick' or 'press', got {kind!r}")
        transcript.extend(events)
    return transcript


# --------------------------------------------------------- tree builders

def build_scan_tree(game, menu_items=MENU_ITEMS) -> ScanTree:
    """Selection set for a game: board group, menu group, keypad subtree.

    Board nesting is band -> row -> editable cell; rows made entirely of
    clues are omitted, as are bands left without rows.  Accepts a
    GameState or a bare Grid.
    """
    grid = game.grid if isinstance(game, GameState) else game
    a = grid.order
    n = grid.size
    bands = []
    for b in range(a):
        rows = []
        for r in range(b * a + 1, b * a + a + 1):
            cells = tuple(
                ScanNode(f"cell:{r},{c}", "cell", payload=Position(r, c))
                for c in range(1, n + 1)
                if not grid.is_clue(Position(r, c))
            )
            if cells:
                rows.append(ScanNode(f"row:{r}", "row", cells))
        if rows:
            bands.append(ScanNode(f"band:{b + 1}", "subgroup", tuple(rows)))
    grid_group = ScanNode("grid", "group", tuple(bands))
    menu_group = ScanNode(
        "menu",
        "group",
        tuple(ScanNode(f"menu:{item}", "menu-item", payload=item) for item in menu_items),
    )
    root = ScanNode("root", "group", (grid_group, menu_group))
    keys = [ScanNode(f"key:{v}", "keypad-key", payload=v) for v in range(1, n + 1)]
    keys.append(ScanNode("key:erase", "keypad-key", payload="erase"))
    keys.append(ScanNode("key:cancel", "keypad-key", payload="cancel"))
    keypad = ScanNode("keypad", "group", tuple(keys))
    return ScanTree(root, keypad)


def build_settings_scan_tree(options=SETTINGS_SCAN_OPTIONS) -> ScanTree:
    """Flat item scan over the settings; each item opens a value scan."""
    items = []
    for field, values in options:
        value_nodes = tuple(
            ScanNode(
                f"setval:{field}:{_value_token(v)}",
                "setting-value",
                payload=(field, v),
            )
            for v in values
        )
        items.append(ScanNode(f"setting:{field}", "setting-item", value_nodes, payload=field))
    items.append(ScanNode("settings:done", "menu-item", payload="close-settings"))
    root = ScanNode("settings", "group", tuple(items))
    return ScanTree(root, keypad=None)


def _value_token(value) -> str:
    if value is True:
        return "on"
    if value is False:
        return "off"
    return str(value)


# ----------------------------------------------------------- script IO

def load_script(text: str) -> list[dict]:
    """Parse a line-delimited script of {"event": "tick"|"press"} records."""
    records = loads_jsonl(text)
    for i, record in enumerate(records, start=1):
        if not isinstance(record, dict) or record.get("event") not in ("tick", "press"):
            raise ValueError(f"script line {i}: expected {{'event': 'tick'|'press'}}")
    return records


def dumps_transcript(events) -> str:
    return dumps_jsonl(events)

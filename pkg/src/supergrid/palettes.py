"""Color palettes and named-color lookup.

The viridis table is the standard 256-entry RGB lookup, embedded as hex
strings so rendering needs no colormap dependency.
"""

from __future__ import annotations

# 256-entry viridis lookup, dark purple (#440154) to yellow (#FDE725).
VIRIDIS: tuple[str, ...] = (
    "#440154", "#440256", "#450457", "#450559", "#46075A", "#46085C", "#460A5D", "#460B5E",
    "#470D60", "#470E61", "#471063", "#471164", "#471365", "#481467", "#481668", "#481769",
    "#48186A", "#481A6C", "#481B6D", "#481C6E", "#481D6F", "#481F70", "#482071", "#482173",
    "#482374", "#482475", "#482576", "#482677", "#482878", "#482979", "#472A7A", "#472C7A",
    "#472D7B", "#472E7C", "#472F7D", "#46307E", "#46327E", "#46337F", "#463480", "#453581",
    "#453781", "#453882", "#443983", "#443A83", "#443B84", "#433D84", "#433E85", "#423F85",
    "#424086", "#424186", "#414287", "#414487", "#404588", "#404688", "#3F4788", "#3F4889",
    "#3E4989", "#3E4A89", "#3E4C8A", "#3D4D8A", "#3D4E8A", "#3C4F8A", "#3C508B", "#3B518B",
    "#3B528B", "#3A538B", "#3A548C", "#39558C", "#39568C", "#38588C", "#38598C", "#375A8C",
    "#375B8D", "#365C8D", "#365D8D", "#355E8D", "#355F8D", "#34608D", "#34618D", "#33628D",
    "#33638D", "#32648E", "#32658E", "#31668E", "#31678E", "#31688E", "#30698E", "#306A8E",
    "#2F6B8E", "#2F6C8E", "#2E6D8E", "#2E6E8E", "#2E6F8E", "#2D708E", "#2D718E", "#2C718E",
    "#2C728E", "#2C738E", "#2B748E", "#2B758E", "#2A768E", "#2A778E", "#2A788E", "#29798E",
    "#297A8E", "#297B8E", "#287C8E", "#287D8E", "#277E8E", "#277F8E", "#27808E", "#26818E",
    "#26828E", "#26828E", "#25838E", "#25848E", "#25858E", "#24868E", "#24878E", "#23888E",
    "#23898E", "#238A8D", "#228B8D", "#228C8D", "#228D8D", "#218E8D", "#218F8D", "#21908D",
    "#21918C", "#20928C", "#20928C", "#20938C", "#1F948C", "#1F958B", "#1F968B", "#1F978B",
    "#1F988B", "#1F998A", "#1F9A8A", "#1E9B8A", "#1E9C89", "#1E9D89", "#1F9E89", "#1F9F88",
    "#1FA088", "#1FA188", "#1FA187", "#1FA287", "#20A386", "#20A486", "#21A585", "#21A685",
    "#22A785", "#22A884", "#23A983", "#24AA83", "#25AB82", "#25AC82", "#26AD81", "#27AD81",
    "#28AE80", "#29AF7F", "#2AB07F", "#2CB17E", "#2DB27D", "#2EB37C", "#2FB47C", "#31B57B",
    "#32B67A", "#34B679", "#35B779", "#37B878", "#38B977", "#3ABA76", "#3BBB75", "#3DBC74",
    "#3FBC73", "#40BD72", "#42BE71", "#44BF70", "#46C06F", "#48C16E", "#4AC16D", "#4CC26C",
    "#4EC36B", "#50C46A", "#52C569", "#54C568", "#56C667", "#58C765", "#5AC864", "#5CC863",
    "#5EC962", "#60CA60", "#63CB5F", "#65CB5E", "#67CC5C", "#69CD5B", "#6CCD5A", "#6ECE58",
    "#70CF57", "#73D056", "#75D054", "#77D153", "#7AD151", "#7CD250", "#7FD34E", "#81D34D",
    "#84D44B", "#86D549", "#89D548", "#8BD646", "#8ED645", "#90D743", "#93D741", "#95D840",
    "#98D83E", "#9BD93C", "#9DD93B", "#A0DA39", "#A2DA37", "#A5DB36", "#A8DB34", "#AADC32",
    "#ADDC30", "#B0DD2F", "#B2DD2D", "#B5DE2B", "#B8DE29", "#BADE28", "#BDDF26", "#C0DF25",
    "#C2DF23", "#C5E021", "#C8E020", "#CAE11F", "#CDE11D", "#D0E11C", "#D2E21B", "#D5E21A",
    "#D8E219", "#DAE319", "#DDE318", "#DFE318", "#E2E418", "#E5E419", "#E7E419", "#EAE51A",
    "#ECE51B", "#EFE51C", "#F1E51D", "#F4E61E", "#F6E620", "#F8E621", "#FBE723", "#FDE725",
)

# Five-color sequential palettes in the style of the BuPu / RdBu brewer
# schemes used by the case-study figures.
BUPU_5: tuple[str, ...] = ("#EDF8FB", "#B3CDE3", "#8C96C6", "#8856A7", "#810F7C")
RDBU_5: tuple[str, ...] = ("#CA0020", "#F4A582", "#F7F7F7", "#92C5DE", "#0571B0")

PALETTES: dict[str, tuple[str, ...]] = {
    "viridis": VIRIDIS,
    "bupu": BUPU_5,
    "rdbu": RDBU_5,
}

# Small named-color table covering the names the config surface accepts.
# greyNN / grayNN (NN in 0..100) are handled programmatically.
_NAMED: dict[str, str] = {
    "white": "#FFFFFF",
    "black": "#000000",
    "red": "#FF0000",
    "green": "#00FF00",
    "blue": "#0000FF",
    "yellow": "#FFFF00",
    "orange": "#FFA500",
    "purple": "#A020F0",
    "pink": "#FFC0CB",
    "lightgreen": "#90EE90",
    "slategray4": "#6B7B8B",
}


def parse_color(color: str) -> tuple[int, int, int]:
    """Parse ``#RRGGBB``, ``#RGB``, a known color name, or grey0..grey100."""
    c = color.strip()
    if c.startswith("#"):
        digits = c[1:]
        if len(digits) == 3:
            digits = "".join(ch * 2 for ch in digits)
        if len(digits) != 6:
            raise ValueError(f"malformed hex color: {color!r}")
        try:
            return tuple(int(digits[i : i + 2], 16) for i in (0, 2, 4))  # type: ignore[return-value]
        except ValueError:
            raise ValueError(f"malformed hex color: {color!r}") from None
    name = c.lower()
    if name in _NAMED:
        return parse_color(_NAMED[name])
    if name.startswith(("grey", "gray")) and name[4:].isdigit():
        level = int(name[4:])
        if 0 <= level <= 100:
            v = int(level * 255 / 100 + 0.5)
            return (v, v, v)
    raise ValueError(f"unknown color name: {color!r}")


def to_hex(rgb: tuple[int, int, int]) -> str:
    return "#%02X%02X%02X" % rgb


def normalize_color(color: str) -> str:
    """Canonical ``#RRGGBB`` (uppercase) form of any accepted color."""
    return to_hex(parse_color(color))

#!/usr/bin/env python3
"""Generates the committed fixture files: the synthetic Wiktionary dump
and the annotated corpus documents (brat standoff offsets are computed
here so they are codepoint-exact). Run from the repository root:

    python3 tests/oracle/make_fixtures.py
"""

import pathlib
import re

ROOT = pathlib.Path(__file__).resolve().parents[2]


# --- wiktionary dump ---------------------------------------------------

def entry_text(name, gloss_lines, synonym_lines=None, extra=""):
    lines = [f"== {name} ({{{{Sprache|Deutsch}}}}) ==",
             "=== {{Wortart|Substantiv|Deutsch}} ===",
             "",
             "{{Bedeutungen}}"]
    lines += gloss_lines
    if synonym_lines:
        lines += ["", "{{Synonyme}}"]
        lines += synonym_lines
    if extra:
        lines += ["", extra]
    return "\n".join(lines) + "\n"


def page(title, text, ns=0, redirect=None):
    def esc(s):
        return s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
    parts = ["  <page>", f"    <title>{esc(title)}</title>", f"    <ns>{ns}</ns>"]
    if redirect:
        parts.append(f'    <redirect title="{esc(redirect)}" />')
    parts += ["    <revision>",
              f'      <text xml:space="preserve">{esc(text)}</text>',
              "    </revision>",
              "  </page>"]
    return "\n".join(parts) + "\n"


PAGES = []

PAGES.append(page("Diabetes", entry_text(
    "Diabetes",
    [":[1] {{K|Medizin}} Stoffwechselerkrankung, bei der eine gesteigerte "
     "Unempfindlichkeit gegenüber [[Insulin]] besteht"],
    [":[1] [[Zuckerkrankheit]]; [[Zucker]]"])))

PAGES.append(page("Delirium tremens", entry_text(
    "Delirium tremens",
    [":[1] {{K|Medizin}} ernste und potentiell lebensbedrohende Komplikation "
     "im [[Alkoholentzug]]"],
    [":[1] [[Alkoholdelir]]; [[Önomanie]]; [[Säuferwahn]]; [[Säuferwahnsinn]]"])))

PAGES.append(page("Dialyse", entry_text(
    "Dialyse",
    [":[1] {{K|Medizin}} Anwendung der Dialyse, vor allem zur Reinigung von [[Blut]]"],
    [":[1] [[Blutreinigung]]; [[Blutwäsche]]"])))

PAGES.append(page("Star", entry_text(
    "Star",
    [":[1] {{K|Zoologie}} mitteleuropäischer Singvogel",
     ":[2] {{K|Medizin}} Trübung oder Erkrankung des [[Auge|Auges]]"],
    [":[2] [[Katarakt]]"])))

PAGES.append(page("Diarrhoe", entry_text(
    "Diarrhoe",
    [":[1] {{K|Medizin}} häufige Entleerung von zu flüssigem [[Stuhl]]"],
    [":[1] {{ugs.|:}} [[Schnelle Katharina]], [[Flotter Otto]]; [[Durchfall]]"])))

PAGES.append(page("Seekrankheit", entry_text(
    "Seekrankheit",
    [":[1] durch Schiffsbewegungen ausgelöste Übelkeit mit [[Erbrechen]]"],
    [":[1] [[Kinetose]]"])))

PAGES.append(page("Schmerz", entry_text(
    "Schmerz",
    [":[1] {{K|Medizin}} unangenehme Sinnesempfindung bei einer Verletzung "
     "oder Erkrankung"],
    [":[1] [[Pein]]; [[Weh]]"])))

PAGES.append(page("Kopfschmerz", entry_text(
    "Kopfschmerz",
    [":[1] {{K|Medizin}} Schmerz im Bereich des [[Kopf|Kopfes]]"],
    [":[1] [[Kopfweh]]; [[Brummschädel]]"])))

PAGES.append(page("Hexenschuss", entry_text(
    "Hexenschuss",
    [":[1] {{K|Medizin}} plötzlich auftretender stechender Schmerz im "
     "unteren Rücken"],
    [":[1] [[Lumbago]]"])))

PAGES.append(page("Zuckerkrankheit", entry_text(
    "Zuckerkrankheit",
    [":[1] auf dauerhaft erhöhten Blutzucker zurückgehende Erkrankung"],
    [":[1] [[Diabetes]]; [[Zucker]]"])))

PAGES.append(page("Grauer Star", entry_text(
    "Grauer Star",
    [":[1] {{K|Medizin}} Trübung der [[Linse]] des Auges"],
    [":[1] [[Katarakt]]; [[Linsentrübung]]"])))

PAGES.append(page("Musizierknochen", entry_text(
    "Musizierknochen",
    [":[1] ''scherzhaft:'' Stelle am Ellenbogen, an welcher der [[Nerv]] "
     "empfindlich auf Stöße reagiert"],
    [":[1] [[Mäuschen]]"],
    extra="[[Kategorie:Anatomie]]")))

PAGES.append(page("Appendizitis", entry_text(
    "Appendizitis",
    [":[1] {{K|Medizin}} Entzündung des [[Wurmfortsatz|Wurmfortsatzes]] des "
     "Blinddarms"],
    [":[1] [[Blinddarmentzündung]]"])))

PAGES.append(page("Blinddarmentzündung", entry_text(
    "Blinddarmentzündung",
    [":[1] {{K|Medizin}} Entzündung des Wurmfortsatzes"],
    [":[1] [[Appendizitis]]"])))

PAGES.append(page("Husten", entry_text(
    "Husten",
    [":[1] {{K|Medizin}} stoßartiges Ausstoßen von Luft zur Reinigung der "
     "[[Atemwege]]"],
    [":[1] [[Tussis]]"])))

PAGES.append(page("Fieber", entry_text(
    "Fieber",
    [":[1] {{K|Medizin}} erhöhte Körpertemperatur bei einer [[Erkrankung]]"],
    [":[1] [[Pyrexie]]; [[Temperaturerhöhung]]"])))

PAGES.append(page("Schnupfen", entry_text(
    "Schnupfen",
    [":[1] {{K|Medizin}} Entzündung der Nasenschleimhaut mit laufender [[Nase]]"],
    [":[1] [[Rhinitis]]"])))

PAGES.append(page("Hypertonie", entry_text(
    "Hypertonie",
    [":[1] {{K|Medizin}} dauerhaft erhöhter [[Blutdruck]]"],
    [":[1] [[Bluthochdruck]]; [[hoher Blutdruck]]"])))

PAGES.append(page("Grippe", entry_text(
    "Grippe",
    [":[1] {{K|Medizin}} durch Viren ausgelöste fieberhafte Erkrankung"],
    [":[1] [[Influenza]]; [[Grippe]]"])))

PAGES.append(page("Niere", entry_text(
    "Niere",
    [":[1] {{K|Anatomie}} paariges Organ, das den [[Harn]] bildet"])))

PAGES.append(page("Magen", entry_text(
    "Magen",
    [":[1] Verdauungsorgan zwischen Speiseröhre und Darm"],
    extra="[[Kategorie:Anatomy]]")))

PAGES.append(page("Darm", entry_text(
    "Darm",
    [":[1] {{K|Anatomie}} Verdauungsorgan zwischen [[Magen]] und After"])))

PAGES.append(page("Leber", entry_text(
    "Leber",
    [":[1] {{K|Anatomie}} Stoffwechselorgan im rechten Oberbauch"])))

PAGES.append(page("Lunge", entry_text(
    "Lunge",
    [":[1] {{K|Anatomie}} Organ, das der [[Atmung]] dient"])))

PAGES.append(page("Bauchschmerzen", entry_text(
    "Bauchschmerzen",
    [":[1] {{K|Medizin}} Schmerzen in der Bauchgegend"],
    [":[1] [[Abdominalschmerz]]"])))

PAGES.append(page("Übelkeit", entry_text(
    "Übelkeit",
    [":[1] {{K|Medizin}} flaues Gefühl im Magen mit Brechreiz"],
    [":[1] [[Nausea]]"])))

PAGES.append(page("Erkältung", entry_text(
    "Erkältung",
    [":[1] {{K|Medizin}} Infekt der oberen Atemwege mit Husten und Schnupfen"],
    [":[1] [[grippaler Infekt]]"])))

PAGES.append(page("Krankenhaus", entry_text(
    "Krankenhaus",
    [":[1] Einrichtung, in der Kranke stationär behandelt werden"],
    [":[1] [[Klinik]]; [[Spital]]"])))

PAGES.append(page("Stuhl", entry_text(
    "Stuhl",
    [":[1] Möbelstück zum Sitzen mit Lehne",
     ":[2] {{K|Medizin}} Ausscheidung des [[Darm|Darmes]]"],
    [":[2] [[Kot]]; [[Fäzes]]"])))

# non-medical padding entries
for name, gloss in [
    ("Tisch", "Möbelstück mit einer Platte auf Beinen"),
    ("Haus", "Gebäude, das Menschen als Wohnung dient"),
    ("Baum", "verholzende Pflanze mit Stamm und Krone"),
    ("Fenster", "Öffnung in einer Wand mit [[Glas]]"),
    ("Brot", "Grundnahrungsmittel, mit Salz &amp; Mehl gebacken"),
    ("Buch", "gebundene Sammlung bedruckter Seiten"),
    ("Lampe", "Gerät zur Beleuchtung"),
    ("Garten", "abgegrenztes Stück Land zum Anbau von Pflanzen"),
    ("Blume", "Pflanze mit auffälliger Blüte"),
    ("Berg", "deutliche Erhebung im Gelände"),
    ("Fluss", "größeres fließendes Gewässer"),
    ("Wolke", "sichtbare Ansammlung von Wassertröpfchen"),
    ("Sonne", "der Erde nächstgelegener Stern"),
    ("Mond", "Himmelskörper, der die Erde umkreist"),
    ("Stern", "selbstleuchtender Himmelskörper"),
    ("Straße", "befestigter Verkehrsweg für Fahrzeuge"),
    ("Pflanze", "Lebewesen, das Photosynthese betreibt"),
]:
    gloss_line = f":[1] {gloss}"
    if name == "Brot":
        text = entry_text(name, [gloss_line])
    elif name == "Stern":
        # a second language section follows the German one
        text = entry_text(name, [gloss_line])
        text += "\n== star ({{Sprache|Englisch}}) ==\n\n{{Bedeutungen}}\n:[1] star\n"
    else:
        text = entry_text(name, [gloss_line])
    PAGES.append(page(name, text))

# pages that yield no entry
PAGES.append(page("fever", "== fever ({{Sprache|Englisch}}) ==\n\n"
                           "{{Bedeutungen}}\n:[1] high body temperature\n"))
PAGES.append(page("Kaputtmacher", entry_text(
    "Kaputtmacher",
    [":[1] eine {{kaputte Vorlage ohne Ende"])))
PAGES.append(page("Wiktionary:Teestube",
                  "Diskussionsseite für alle Fragen.\n", ns=4))
PAGES.append(page("Zuckerkrankheiten",
                  "#WEITERLEITUNG [[Zuckerkrankheit]]\n",
                  redirect="Zuckerkrankheit"))


def write_dump():
    out = ROOT / "fixtures" / "wiktionary" / "dump.xml"
    body = ('<mediawiki xmlns="http://www.mediawiki.org/xml/export-0.10/" '
            'xml:lang="de">\n'
            "  <siteinfo>\n"
            "    <sitename>Wiktionary</sitename>\n"
            "    <dbname>dewiktionary</dbname>\n"
            "  </siteinfo>\n")
    body += "".join(PAGES)
    body += "</mediawiki>\n"
    out.write_text(body, encoding="utf-8")
    print(f"dump: {len(PAGES)} pages -> {out}")


# --- corpus ------------------------------------------------------------

# [[surface|Label|counterpart]] marks an annotated span
DOCS = {
    "kidney/k01": (
        "Hallo zusammen, ich habe seit Tagen [[Hexenschuss|Lay|Lumbago]] und "
        "dazu [[Blut im Urin|Lay|Hämaturie]]. Mein Arzt sprach von "
        "[[Lumbago|Technical|Hexenschuss]] und will die "
        "[[Nierensteine|Lay|Nephrolithiasis]] prüfen."
    ),
    "kidney/k02": (
        "Der Befund zeigt [[Eiweissverlust über die Nieren|Lay|Proteinurie]] "
        "bei normalem Blutdruck, der Arzt nannte es "
        "[[Normotonie|Technical|normaler Blutdruck]]. Gegen den "
        "[[Bluthochdruck|Lay|Hypertonie]] bekomme ich nichts mehr, aber der "
        "[[Hexenschuss|Lay|Lumbago]] kam zurück, letzte Woche hiess es noch "
        "[[Lumbago|Technical|Hexenschuss]]."
    ),
    "kidney/k03": (
        "Nach der Biopsie wurde ein [[Karzinom|Technical|Krebs]] "
        "ausgeschlossen, zum Glück. Trotzdem ist wieder "
        "[[Blut im Urin|Lay|Hämaturie]] aufgefallen."
    ),
    "stomach_intestines/s01": (
        "Seit dem Essen gestern habe ich schlimmen [[Durchfall|Lay|Diarrhö]]. "
        "Die Ärztin vermutet eine "
        "[[Appendizitis|Technical|Blinddarmentzündung]], mein "
        "[[Zucker|Lay|Diabetes]] macht es nicht leichter."
    ),
    "stomach_intestines/s02": (
        "Dazu kommt [[Kopfweh|Lay|Kopfschmerz]] und nachts wieder "
        "[[Durchfall|Lay|Diarrhö]]. Im Entlassungsbrief stand "
        "[[Karzinom|Technical|Krebs]] mit Fragezeichen, gemeint war wohl die "
        "[[Blinddarmentzündung|Lay|Appendizitis]]."
    ),
}

MARK = re.compile(r"\[\[([^|\]]+)\|(Lay|Technical)\|([^\]]*)\]\]")


def write_corpus():
    base = ROOT / "fixtures" / "corpus"
    for doc_id, marked in DOCS.items():
        text = ""
        annotations = []
        pos = 0
        for match in MARK.finditer(marked):
            text += marked[pos:match.start()]
            surface, label, counterpart = match.groups()
            start = len(text)  # python str length == codepoints
            text += surface
            annotations.append((label, start, len(text), surface, counterpart))
            pos = match.end()
        text += marked[pos:]
        text += "\n"

        txt_path = base / (doc_id + ".txt")
        txt_path.parent.mkdir(parents=True, exist_ok=True)
        txt_path.write_text(text, encoding="utf-8")

        ann_lines = []
        note = 0
        for i, (label, start, end, surface, counterpart) in enumerate(annotations, 1):
            ann_lines.append(f"T{i}\t{label} {start} {end}\t{surface}")
            if counterpart:
                note += 1
                ann_lines.append(f"#{note}\tAnnotatorNotes T{i}\t{counterpart}")
        ann_path = base / (doc_id + ".ann")
        ann_path.write_text("\n".join(ann_lines) + "\n", encoding="utf-8")

        tokens = len(text.split())
        print(f"{doc_id}: {len(annotations)} annotations, {tokens} tokens")


if __name__ == "__main__":
    write_dump()
    write_corpus()

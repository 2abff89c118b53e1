#!/usr/bin/env python3
"""Builds tests/data/spanish_stem_oracle.tsv: word<TAB>stem<TAB>restem rows
produced by the reference Snowball Spanish stemmer (pip package
`snowballstemmer`). restem is the stem of the stem; the algorithm is not
idempotent on every word, so the tests compare against this column too.

The vocabulary mixes frequent Spanish words from sonnet-style verse with
systematically inflected verbs, derived nouns/adjectives and enclitic forms so
every suffix class of the algorithm is exercised.
"""
import itertools
import sys

import snowballstemmer

COMMON = """
amor amores alma almas vida muerte tiempo ojos cielo tierra mar fuego llanto
dolor dolores pecho corazón corazones noche día días sol luna estrellas rosa
rosas flor flores muerte muertes hermosura belleza gloria fortuna esperanza
esperanzas pena penas gozo cuidado cuidados fe razón razones deseo deseos
memoria olvido suspiro suspiros lágrimas lágrima sombra sombras luz luces
viento vientos agua aguas oro plata nieve hielo llama llamas ceniza polvo
gato gatos humo nada mundo mundos señor señora dama pastor pastora río ríos monte montes
campo campos prado prados selva bosque árbol árboles hoja hojas rama ramas
fruto frutos primavera verano otoño invierno aurora alba tarde ocaso
dulce dulces amargo amarga triste tristes alegre alegres fiero fiera cruel
crueles tierno tierna hermoso hermosa hermosos hermosas bello bella bellos
bellas divino divina divinos divinas eterno eterna eternos eternas mortal
mortales humano humana infinito infinita ardiente ardientes frío fría
canta cantas cantan cantamos cantáis cantaba cantabas cantábamos cantaban
cantó cantaste cantaron cantaré cantarás cantará cantaremos cantarán
cantaría cantarías cantaríamos cantarían cante cantes cantemos canten
cantara cantaras cantáramos cantaran cantase cantases cantásemos cantasen
cantando cantado cantada cantados cantadas cantar cantador cantadora
cántame cantándole cantárselo dímelo dámelo decírselo haciéndola
haciéndolo diciéndole mirándola mirarte quererte amarte amarla amarlo
olvidarte olvidarla perderme perderse morirse morirme vivirla sentirlo
oyendo cayendo leyendo huyendo creyendo construyendo destruyendo
arguyendo huyó huyeron construyó construyeron construyan destruya
atribuye contribuyen influyen incluye incluyó excluyeron
nacional naciones nación acción acciones canción canciones pasión pasiones
razonable razonables posible posibles imposible terrible terribles
felicidad felicidades libertad libertades crueldad bondad verdad verdades
claridad oscuridad eternidad soledad soledades vanidad piedad humildad
rápidamente dulcemente tristemente suavemente eternamente felizmente
lentamente solamente ciertamente apenas
lógica lógicas biología teología mitología astrología
generación generaciones adoración adoraciones creación creaciones
solución soluciones revolución revoluciones constitución
abundancia abundancias ignorancia distancia distancias constancia
presencia presencias ausencia ausencias ciencia conciencia paciencia
diferencia diferencias inocencia
esperanza confianza mudanza venganza alabanza semejanza templanza
idealismo realismo egoísmo abismo abismos mismo mismos
artista artistas poeta poetas amante amantes caminante caminantes
creativo creativa creativos creativas activo activa activos activas
pensativo pensativa pensativos intensivo
lamentable lamentables admirable admirables visible invisibles
agradable amable amables inefable
movimiento movimientos sentimiento sentimientos pensamiento pensamientos
nacimiento renacimiento tormento tormentos contento contentos
majestuoso majestuosa glorioso gloriosa gloriosos gloriosas
amoroso amorosa amorosos amorosas dichoso dichosa dichosos
piadoso piadosa celoso celosa celosos ansioso ansiosa
heroico heroica heroicos heroicas histórico histórica poético poética
poéticos poéticas angélico angélica
mortalidad inmortalidad sensibilidad posibilidad habilidad estabilidad
actividad creatividad negatividad
pura puro puros puras ciego ciega ciegos ciegas loco loca locos locas
vuelve vuelven volvía volvió volverá volviera volviese
muere mueren moría murió morirá muriera muriese muriendo morir
vive viven vivía vivió vivirá viviera viviese viviendo vivir vivido
siente sienten sentía sintió sentirá sintiera sintiendo sentir sentido
quiere quieren quería quiso querrá quisiera queriendo querer querido
puede pueden podía pudo podrá pudiera pudiendo poder podido
tiene tienen tenía tuvo tendrá tuviera teniendo tener tenido
hace hacen hacía hizo hará hiciera haciendo hacer hecho
dice dicen decía dijo dirá dijera diciendo decir dicho
ve ven veía vio verá viera viendo ver visto
da dan daba dio dará diera dando dar dado
va van iba fue irá fuera yendo ir ido
es son era fue será fuera siendo ser sido
está están estaba estuvo estará estuviera estando estar estado
llora lloran lloraba lloró llorará llorara llorando llorar llorado
mira miran miraba miró mirará mirara mirando mirar mirado
pasa pasan pasaba pasó pasará pasara pasando pasar pasado
llega llegan llegaba llegó llegará llegara llegando llegar llegado
sigue siguen seguía siguió seguirá siguiera siguiendo seguir seguido
persigue persiguen perseguía persiguió perseguir perseguido
averigüe averigüen averiguar guerra guerras guía guías guiar
águila águilas pingüino pingüinos vergüenza agüero
"""

AR_ROOTS = "am cant llor mir pas lleg habl esper ador dese suspir mat lament abras bes gan robl pens cambi mand dej tom busc encontr dese olvid call quem arrastr".split()
ER_ROOTS = "beb com corr tem vend aprend comprend met perd respond ofend recog esconde".split()
IR_ROOTS = "viv part sub abr escrib recib sufr decid un cumpl exist fing".split()

AR_END = ["ar", "o", "as", "a", "amos", "áis", "an", "aba", "abas", "ábamos", "abais",
          "aban", "é", "aste", "ó", "asteis", "aron", "aré", "arás", "ará", "aremos",
          "aréis", "arán", "aría", "arías", "aríamos", "aríais", "arían", "e", "es",
          "emos", "éis", "en", "ara", "aras", "áramos", "arais", "aran", "ase", "ases",
          "ásemos", "aseis", "asen", "ando", "ado", "ada", "ados", "adas", "ad",
          "ándola", "arla", "arlo", "arte", "arme", "arse", "ándose", "ador", "adora",
          "adores", "ación", "aciones", "amiento", "amientos", "able", "ante", "antes"]
ER_END = ["er", "o", "es", "e", "emos", "éis", "en", "ía", "ías", "íamos", "íais",
          "ían", "í", "iste", "ió", "isteis", "ieron", "eré", "erás", "erá", "eremos",
          "eréis", "erán", "ería", "erías", "eríamos", "eríais", "erían", "a", "as",
          "amos", "áis", "an", "iera", "ieras", "iéramos", "ierais", "ieran", "iese",
          "ieses", "iésemos", "ieseis", "iesen", "iendo", "ido", "ida", "idos", "idas",
          "ed", "iéndolo", "erla", "erlo", "erte", "erse", "imiento", "imientos", "ible"]
IR_END = ["ir", "o", "es", "e", "imos", "ís", "en", "ía", "ías", "íamos", "ían", "í",
          "iste", "ió", "isteis", "ieron", "iré", "irás", "irá", "iremos", "iréis",
          "irán", "iría", "irías", "iríamos", "iríais", "irían", "a", "as", "amos",
          "áis", "an", "iera", "ieras", "iéramos", "ieran", "iese", "iesen", "iendo",
          "ido", "ida", "idos", "idas", "id", "iéndola", "irla", "irlo", "irte", "irse",
          "iremos", "imiento"]

NOUN_ROOTS = "flor mar cant llant sol cielo fuego viento pastor ros tierr luz".split()
NOUN_END = ["", "es", "s", "ito", "ita", "itos", "itas", "ista", "istas", "ismo", "oso",
            "osa", "osos", "osas", "ico", "ica", "ería", "ecer"]


def vocabulary():
    words = set(COMMON.split())
    for roots, ends in ((AR_ROOTS, AR_END), (ER_ROOTS, ER_END), (IR_ROOTS, IR_END)):
        for r, e in itertools.product(roots, ends):
            words.add(r + e)
    for r, e in itertools.product(NOUN_ROOTS, NOUN_END):
        words.add(r + e)
    # Short and degenerate inputs.
    words.update(["x", "a", "y", "o", "e", "ya", "yo", "mí", "tú", "él", "aéreo", "oeste",
                  "aire", "aúlla", "ea", "oí", "ún", "ñu", "ñandú"])
    return sorted(words)


def main(path):
    stemmer = snowballstemmer.stemmer("spanish")
    words = vocabulary()
    with open(path, "w", encoding="utf-8") as out:
        for w in words:
            stem = stemmer.stemWord(w)
            out.write(f"{w}\t{stem}\t{stemmer.stemWord(stem)}\n")
    print(f"wrote {len(words)} rows to {path}")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "tests/data/spanish_stem_oracle.tsv")

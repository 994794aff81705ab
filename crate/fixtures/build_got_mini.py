#!/usr/bin/env python3
"""Builds the got-mini snapshot and benchmark.

Writes entities.json, facts.json, pages.json, links.json and benchmark.json
next to this script's got-mini/ directory. stopwords.txt is maintained by
hand. Output is deterministic; rerun after editing the tables below.
"""

import json
from pathlib import Path

OUT = Path(__file__).resolve().parent / "got-mini"
WD = "https://www.wikidata.org/wiki/"

entities = []  # records in declaration order
by_label = {}


def ent(label, types=(), aliases=(), page=False):
    eid = f"Q{len(entities) + 1}"
    rec = {"id": eid, "label": label, "aliases": list(aliases), "types": [{"label": t, "freq": f} for t, f in types]}
    if page:
        rec["page_id"] = "p-" + label.lower().replace(" ", "-").replace(".", "").replace(",", "")
    entities.append(rec)
    by_label[label] = rec
    return eid


def E(label):
    return by_label[label]["id"]


facts = []


def fact(s, p, o, quals=()):
    def obj(x):
        return {"entity": E(x)} if x in by_label else {"literal": x}

    facts.append(
        {
            "fact_id": f"F{len(facts) + 1}",
            "subject": E(s),
            "predicate": p,
            "object": obj(o),
            "qualifiers": [{"predicate": qp, "object": obj(qo)} for qp, qo in quals],
        }
    )


pages = []


def page(label, sentences=(), tables=(), infobox=(), anchors=()):
    rec = by_label[label]
    pages.append(
        {
            "page_id": rec["page_id"],
            "title": label,
            "entity": rec["id"],
            "sentences": list(sentences),
            "tables": [
                {"caption": cap, "headers": list(h), "rows": [list(r) for r in rows]} for cap, h, rows in tables
            ],
            "infobox": [{"attribute": a, "lines": list(lines)} for a, lines in infobox],
            "anchors": [{"surface": s, "target": t} for s, t in anchors],
        }
    )


HUMAN = [("human", 90)]
CITY = [("city", 40)]

# ---------------------------------------------------------------- entities

# TV series
ent("Game of Thrones", [("television series", 50)], ["GoT"], page=True)
ent("Nikolaj Coster-Waldau", HUMAN)
ent("Jaime Lannister", [("fictional human", 30), ("GoT character", 5)], ["Jaime"])
ent("Peter Dinklage", HUMAN, ["Dinklage"], page=True)
ent("Tyrion Lannister", [("fictional human", 30), ("GoT character", 5)], ["Tyrion", "The Imp", "the dwarf"])
ent("Emilia Clarke", HUMAN)
ent("Daenerys Targaryen", [("fictional human", 30)], ["Daenerys", "Dany"])
ent("HBO", [("television network", 10)])
ent("Morristown", CITY)
ent("David Benioff", HUMAN)
ent("D. B. Weiss", HUMAN)
ent("A Song of Ice and Fire", [("book series", 10)])
ent("George R. R. Martin", HUMAN, ["GRRM"])
ent("Breaking Bad", [("television series", 50)], page=True)
ent("Vince Gilligan", HUMAN)
ent("Bryan Cranston", HUMAN, ["Cranston"])
ent("Walter White", [("fictional human", 30)], ["Heisenberg", "Walt"])
ent("Aaron Paul", HUMAN)
ent("Jesse Pinkman", [("fictional human", 30)], ["Jesse"])
ent("AMC", [("television network", 10)])
ent("Albuquerque", CITY)
ent("Hollywood", CITY)
ent("Primetime Emmy Award for Outstanding Lead Actor in a Drama Series", [("award", 20)], ["Emmy Award"])

# Books
ent("The Hobbit", [("literary work", 60)], page=True)
ent("J. R. R. Tolkien", HUMAN, ["Tolkien"])
ent("George Allen & Unwin", [("publisher", 10)], ["Allen & Unwin"])
ent("Bilbo Baggins", [("fictional human", 30)], ["Bilbo"])
ent("Gandalf", [("fictional wizard", 20)], ["the wizard"])
ent("Smaug", [("dragon", 5)])
ent("The Lord of the Rings", [("literary work", 60)])
ent("Bloemfontein", CITY)
ent("high fantasy", [("literary genre", 10)])
ent("Pride and Prejudice", [("literary work", 60)], page=True)
ent("Jane Austen", HUMAN, ["Austen"])
ent("Thomas Egerton", [("publisher", 10)], ["Egerton"])
ent("Elizabeth Bennet", [("fictional human", 30)], ["Lizzy"])
ent("Fitzwilliam Darcy", [("fictional human", 30)], ["Mr. Darcy", "Darcy"])
ent("Steventon", CITY)
ent("Winchester", CITY)
ent("Hertfordshire", [("county", 10)])
ent("Pride & Prejudice", [("film", 40)])
ent("Matthew Macfadyen", HUMAN)

# Movies
ent("Inception", [("film", 40)], page=True)
ent("Christopher Nolan", HUMAN, ["Nolan"])
ent("Leonardo DiCaprio", HUMAN, ["DiCaprio"])
ent("Dom Cobb", [("fictional human", 30)], ["Cobb"])
ent("Hans Zimmer", HUMAN, ["Zimmer"])
ent("Warner Bros.", [("film distributor", 10)], ["Warner Bros"])
ent("London", CITY)
ent("The Dark Knight", [("film", 40)])
ent("The Godfather", [("film", 40)], page=True)
ent("Francis Ford Coppola", HUMAN, ["Coppola"])
ent("Marlon Brando", HUMAN, ["Brando"])
ent("Vito Corleone", [("fictional human", 30)], ["Don Corleone"])
ent("Al Pacino", HUMAN, ["Pacino"])
ent("Michael Corleone", [("fictional human", 30)], ["Michael"])
ent("Mario Puzo", HUMAN, ["Puzo"])
ent("Omaha", CITY)
ent("Academy Award for Best Picture", [("award", 20)], ["Best Picture"])
ent("The Godfather Part II", [("film", 40)])

# Music
ent("Thriller", [("album", 30)], page=True)
ent("Michael Jackson", HUMAN, ["Michael", "MJ", "King of Pop"])
ent("Quincy Jones", HUMAN, ["Quincy"])
ent("Epic Records", [("record label", 10)], ["Epic"])
ent("Billie Jean", [("single", 20)])
ent("Gary", CITY)
ent("pop music", [("music genre", 10)], ["pop"])
ent("Abbey Road", [("album", 30)], page=True)
ent("The Beatles", [("rock band", 20)], ["Beatles"])
ent("George Martin", HUMAN, ["Martin"])
ent("Apple Records", [("record label", 10)])
ent("Abbey Road Studios", [("recording studio", 5)])
ent("Liverpool", CITY)
ent("John Lennon", HUMAN, ["Lennon"])
ent("Paul McCartney", HUMAN, ["McCartney"])
ent("George Harrison", HUMAN, ["Harrison"])
ent("Ringo Starr", HUMAN, ["Ringo"])

# Soccer
ent("FC Barcelona", [("association football club", 30)], ["Barça", "Barca"], page=True)
ent("Camp Nou", [("stadium", 10)])
ent("Joan Gamper", HUMAN, ["Gamper", "Joan"])
ent("La Liga", [("association football league", 10)])
ent("Barcelona", CITY)
ent("Winterthur", CITY)
ent("Lionel Messi", HUMAN, ["Messi", "Leo Messi"], page=True)
ent("Rosario", CITY)
ent("Argentina national football team", [("national association football team", 30)], ["Argentina"])
ent("Paris Saint-Germain", [("association football club", 30)], ["PSG"])
ent("2014 FIFA World Cup", [("FIFA World Cup", 5)], ["2014 World Cup"], page=True)
ent("Brazil", [("country", 50)])
ent("Germany national football team", [("national association football team", 30)], ["Germany"])
ent("Maracanã Stadium", [("stadium", 10)], ["Maracanã", "Maracana"])
ent("Rio de Janeiro", CITY, ["Rio"])
ent("James Rodríguez", HUMAN, ["James", "James Rodriguez"])
ent("Colombia national football team", [("national association football team", 30)], ["Colombia"])
ent("Mario Götze", HUMAN, ["Götze", "Gotze"])

# Popular senses of ambiguous aliases. With twelve facts each, their prior
# is more than twice that of the topic sense, so alone they win outright.
DECOYS = {
    "Dwarf": (["the dwarf", "dwarves"], [("mythical creature", 40)]),
    "Werner Heisenberg": (["Heisenberg"], HUMAN),
    "Wizard": (["the wizard", "wizards"], [("occupation", 20)]),
    "darcy": (["Darcy"], [("unit of measurement", 10)]),
    "Ty Cobb": (["Cobb"], HUMAN),
    "Quincy": (["Quincy"], CITY),
    "Dean Martin": (["Martin"], HUMAN),
    "Joan of Arc": (["Joan"], HUMAN),
    "James Bond": (["James", "007"], [("fictional human", 30)]),
}
for label, (aliases, types) in DECOYS.items():
    ent(label, types, aliases)

# ------------------------------------------------------------------- facts

fact("Game of Thrones", "cast member", "Nikolaj Coster-Waldau", [("character role", "Jaime Lannister")])
fact("Game of Thrones", "cast member", "Peter Dinklage", [("character role", "Tyrion Lannister")])
fact("Game of Thrones", "cast member", "Emilia Clarke", [("character role", "Daenerys Targaryen")])
fact("Game of Thrones", "original broadcaster", "HBO")
fact("Game of Thrones", "creator", "David Benioff")
fact("Game of Thrones", "creator", "D. B. Weiss")
fact("Game of Thrones", "based on", "A Song of Ice and Fire")
fact("Game of Thrones", "number of seasons", "8")
fact("Game of Thrones", "number of episodes", "73")
fact("Peter Dinklage", "date of birth", "11 June 1969")
fact("Peter Dinklage", "place of birth", "Morristown")
fact("Emilia Clarke", "date of birth", "23 October 1986")
fact("A Song of Ice and Fire", "author", "George R. R. Martin")
fact("George R. R. Martin", "date of birth", "20 September 1948")

fact("Breaking Bad", "creator", "Vince Gilligan")
fact("Breaking Bad", "cast member", "Bryan Cranston", [("character role", "Walter White")])
fact("Breaking Bad", "cast member", "Aaron Paul", [("character role", "Jesse Pinkman")])
fact("Breaking Bad", "original broadcaster", "AMC")
fact("Breaking Bad", "narrative location", "Albuquerque")
fact("Breaking Bad", "number of seasons", "5")
fact("Breaking Bad", "start time", "20 January 2008")
fact("Bryan Cranston", "date of birth", "7 March 1956")
fact("Bryan Cranston", "place of birth", "Hollywood")
fact(
    "Bryan Cranston",
    "award received",
    "Primetime Emmy Award for Outstanding Lead Actor in a Drama Series",
    [("for work", "Breaking Bad")],
)
fact("Aaron Paul", "date of birth", "27 August 1979")

fact("The Hobbit", "author", "J. R. R. Tolkien")
fact("The Hobbit", "illustrator", "J. R. R. Tolkien")
fact("The Hobbit", "publication date", "21 September 1937")
fact("The Hobbit", "publisher", "George Allen & Unwin")
fact("The Hobbit", "characters", "Bilbo Baggins")
fact("The Hobbit", "characters", "Gandalf", [("object has role", "mentor")])
fact("The Hobbit", "characters", "Smaug")
fact("The Hobbit", "followed by", "The Lord of the Rings")
fact("The Hobbit", "genre", "high fantasy")
fact("J. R. R. Tolkien", "date of birth", "3 January 1892")
fact("J. R. R. Tolkien", "place of birth", "Bloemfontein")

fact("Pride and Prejudice", "author", "Jane Austen")
fact("Pride and Prejudice", "publication date", "28 January 1813")
fact("Pride and Prejudice", "publisher", "Thomas Egerton")
fact("Pride and Prejudice", "characters", "Elizabeth Bennet")
fact("Pride and Prejudice", "characters", "Fitzwilliam Darcy")
fact("Pride and Prejudice", "narrative location", "Hertfordshire")
fact("Elizabeth Bennet", "spouse", "Fitzwilliam Darcy")
fact("Jane Austen", "date of birth", "16 December 1775")
fact("Jane Austen", "place of birth", "Steventon")
fact("Jane Austen", "date of death", "18 July 1817")
fact("Jane Austen", "place of death", "Winchester")
fact("Pride & Prejudice", "based on", "Pride and Prejudice")
fact("Pride & Prejudice", "cast member", "Matthew Macfadyen", [("character role", "Fitzwilliam Darcy")])

fact("Inception", "director", "Christopher Nolan")
fact("Inception", "cast member", "Leonardo DiCaprio", [("character role", "Dom Cobb")])
fact("Inception", "composer", "Hans Zimmer")
fact("Inception", "publication date", "16 July 2010")
fact("Inception", "distributed by", "Warner Bros.")
fact("Christopher Nolan", "date of birth", "30 July 1970")
fact("Christopher Nolan", "place of birth", "London")
fact("The Dark Knight", "director", "Christopher Nolan")
fact("The Dark Knight", "publication date", "18 July 2008")
fact("Leonardo DiCaprio", "date of birth", "11 November 1974")

fact("The Godfather", "director", "Francis Ford Coppola")
fact("The Godfather", "cast member", "Marlon Brando", [("character role", "Vito Corleone")])
fact("The Godfather", "cast member", "Al Pacino", [("character role", "Michael Corleone")])
fact("The Godfather", "screenwriter", "Mario Puzo")
fact("The Godfather", "publication date", "24 March 1972")
fact("The Godfather", "award received", "Academy Award for Best Picture")
fact("The Godfather", "followed by", "The Godfather Part II")
fact("Marlon Brando", "date of birth", "3 April 1924")
fact("Marlon Brando", "place of birth", "Omaha")
fact("The Godfather Part II", "publication date", "20 December 1974")
fact("Al Pacino", "date of birth", "25 April 1940")

fact("Thriller", "performer", "Michael Jackson")
fact("Thriller", "producer", "Quincy Jones")
fact("Thriller", "publication date", "30 November 1982")
fact("Thriller", "record label", "Epic Records")
fact("Thriller", "genre", "pop music")
fact("Billie Jean", "part of", "Thriller")
fact("Billie Jean", "performer", "Michael Jackson")
fact("Michael Jackson", "date of birth", "29 August 1958")
fact("Michael Jackson", "place of birth", "Gary")
fact("Quincy Jones", "date of birth", "14 March 1933")
for work in ["Bad", "Off the Wall", "Dangerous", "HIStory", "Invincible", "Ben"]:
    fact("Michael Jackson", "notable work", work)

fact("Abbey Road", "performer", "The Beatles")
fact("Abbey Road", "publication date", "26 September 1969")
fact("Abbey Road", "producer", "George Martin")
fact("Abbey Road", "record label", "Apple Records")
fact("Abbey Road", "recorded at", "Abbey Road Studios")
fact("Abbey Road Studios", "located in", "London")
fact("The Beatles", "location of formation", "Liverpool")
fact("The Beatles", "has part", "John Lennon", [("object has role", "rhythm guitar")])
fact("The Beatles", "has part", "Paul McCartney", [("object has role", "bass guitar")])
fact("The Beatles", "has part", "George Harrison", [("object has role", "lead guitar")])
fact("The Beatles", "has part", "Ringo Starr", [("object has role", "drums")])
fact("Ringo Starr", "date of birth", "7 July 1940")
fact("George Martin", "date of birth", "3 January 1926")
fact("Paul McCartney", "date of birth", "18 June 1942")

fact("FC Barcelona", "home venue", "Camp Nou")
fact("FC Barcelona", "inception", "29 November 1899")
fact("FC Barcelona", "founded by", "Joan Gamper", [("point in time", "29 November 1899")])
fact("FC Barcelona", "league", "La Liga")
fact("Camp Nou", "located in", "Barcelona")
fact("Joan Gamper", "place of birth", "Winterthur")
fact("Joan Gamper", "date of birth", "22 November 1877")
fact("Lionel Messi", "member of sports team", "FC Barcelona", [("start time", "2004")])
fact("Lionel Messi", "member of sports team", "Paris Saint-Germain", [("start time", "2021")])
fact("Lionel Messi", "member of sports team", "Argentina national football team")
fact("Lionel Messi", "date of birth", "24 June 1987")
fact("Lionel Messi", "place of birth", "Rosario")

fact("2014 FIFA World Cup", "country", "Brazil")
fact("2014 FIFA World Cup", "winner", "Germany national football team")
fact("2014 FIFA World Cup", "runner-up", "Argentina national football team")
fact("2014 FIFA World Cup", "top scorer", "James Rodríguez", [("number of goals", "6")])
fact("2014 FIFA World Cup", "start time", "12 June 2014")
fact("2014 FIFA World Cup", "end time", "13 July 2014")
fact("James Rodríguez", "member of sports team", "Colombia national football team")
fact("James Rodríguez", "date of birth", "12 July 1991")
fact("Maracanã Stadium", "located in", "Rio de Janeiro")

DECOY_FACTS = {
    "Dwarf": ("present in work", ["The Hobbit (1937 novel)", "Snow White", "Norse mythology", "Discworld", "Warcraft", "Dungeons & Dragons", "The Witcher"]),
    "Werner Heisenberg": ("notable work", ["uncertainty principle", "matrix mechanics", "S-matrix", "Heisenberg picture", "Heisenberg model", "Physics and Philosophy", "isospin"]),
    "Wizard": ("present in work", ["Merlin", "Harry Potter", "The Wizard of Oz", "Earthsea", "Discworld", "The Sorcerer's Apprentice", "Dungeons & Dragons"]),
    "darcy": ("measured physical quantity", ["permeability", "hydraulic conductivity", "porous media", "petroleum engineering", "millidarcy", "Darcy's law", "SI unit m2"]),
    "Ty Cobb": ("award received", ["Baseball Hall of Fame", "batting title 1907", "batting title 1911", "Triple Crown", "MVP 1911", "Detroit Tigers", "Philadelphia Athletics"]),
    "Quincy": ("shares border with", ["Boston", "Braintree", "Milton", "Weymouth", "Randolph", "Norfolk County", "Massachusetts Bay"]),
    "Dean Martin": ("notable work", ["That's Amore", "Everybody Loves Somebody", "Volare", "Rat Pack", "The Dean Martin Show", "Rio Bravo", "Ocean's 11"]),
    "Joan of Arc": ("significant event", ["Siege of Orléans", "Battle of Patay", "coronation of Charles VII", "trial of Joan of Arc", "canonization", "Hundred Years' War", "Domrémy"]),
    "James Bond": ("present in work", ["Dr. No", "Goldfinger", "Skyfall", "Casino Royale", "Thunderball", "GoldenEye", "Spectre"]),
}
for label, (pred, objs) in DECOY_FACTS.items():
    for o in objs:
        fact(label, pred, o)
    for i in range(12 - len(objs)):
        fact(label, "described by source", f"{label} reference {i + 1}")

# ------------------------------------------------------------------- pages

page(
    "Game of Thrones",
    sentences=[
        "Game of Thrones is an American fantasy drama television series created by David Benioff and D. B. Weiss for HBO.",
        "It is an adaptation of A Song of Ice and Fire, a series of fantasy novels by George R. R. Martin.",
        "The third and youngest Lannister sibling is the dwarf Tyrion (Peter Dinklage) (...).",
        "The series premiered on HBO in the United States on April 17, 2011, and concluded on May 19, 2019.",
    ],
    tables=[
        (
            "Series overview",
            ["Season", "Episodes", "First aired", "Last aired"],
            [
                ["Season 1", "10", "April 17, 2011", "June 19, 2011"],
                ["Season 2", "10", "April 1, 2012", "June 3, 2012"],
                ["Season 8", "6", "April 14, 2019", "May 19, 2019"],
            ],
        )
    ],
    infobox=[
        ("Created by", ["David Benioff", "D. B. Weiss"]),
        ("Original network", ["HBO"]),
        ("No. of seasons", ["8"]),
        ("Running time", ["50–82 minutes"]),
    ],
    anchors=[
        ("David Benioff", "David Benioff"),
        ("D. B. Weiss", "D. B. Weiss"),
        ("HBO", "HBO"),
        ("A Song of Ice and Fire", "A Song of Ice and Fire"),
        ("George R. R. Martin", "George R. R. Martin"),
        ("Tyrion", "Tyrion Lannister"),
        ("Peter Dinklage", "Peter Dinklage"),
    ],
)
page(
    "Peter Dinklage",
    sentences=[
        "Peter Dinklage (born June 11, 1969) is an American actor.",
        "He was born in Morristown, New Jersey.",
    ],
    anchors=[("Morristown", "Morristown")],
)
page(
    "Breaking Bad",
    sentences=[
        "Breaking Bad is an American crime drama television series created and produced by Vince Gilligan.",
        "Set and filmed in Albuquerque, New Mexico, the series follows Walter White, an underpaid high school chemistry teacher.",
        "The series premiered on AMC on January 20, 2008.",
    ],
    tables=[
        (
            "Series overview",
            ["Season", "Episodes", "First aired"],
            [["1", "7", "January 20, 2008"], ["5", "16", "July 15, 2012"]],
        )
    ],
    infobox=[("Running time", ["43–58 minutes"]), ("Original network", ["AMC"])],
    anchors=[("Vince Gilligan", "Vince Gilligan"), ("Albuquerque", "Albuquerque"), ("Walter White", "Walter White"), ("AMC", "AMC")],
)
page(
    "The Hobbit",
    sentences=[
        "The Hobbit, or There and Back Again is a children's fantasy novel by J. R. R. Tolkien.",
        "The story follows the home-loving hobbit Bilbo Baggins, who is recruited by the wizard Gandalf.",
        "The quest ends at the Lonely Mountain, guarded by the dragon Smaug.",
    ],
    infobox=[("Illustrator", ["J. R. R. Tolkien"]), ("Pages", ["310"]), ("Followed by", ["The Lord of the Rings"])],
    anchors=[
        ("J. R. R. Tolkien", "J. R. R. Tolkien"),
        ("Bilbo Baggins", "Bilbo Baggins"),
        ("Gandalf", "Gandalf"),
        ("Smaug", "Smaug"),
        ("The Lord of the Rings", "The Lord of the Rings"),
    ],
)
page(
    "Pride and Prejudice",
    sentences=[
        "Pride and Prejudice is an 1813 novel of manners by Jane Austen.",
        "The novel follows the character development of Elizabeth Bennet, the protagonist of the book.",
        "Elizabeth eventually marries Fitzwilliam Darcy.",
    ],
    infobox=[("Publisher", ["Thomas Egerton"]), ("Publication date", ["28 January 1813"])],
    anchors=[
        ("Jane Austen", "Jane Austen"),
        ("Elizabeth Bennet", "Elizabeth Bennet"),
        ("Fitzwilliam Darcy", "Fitzwilliam Darcy"),
        ("Thomas Egerton", "Thomas Egerton"),
    ],
)
page(
    "Inception",
    sentences=[
        "Inception is a 2010 science fiction action film written and directed by Christopher Nolan.",
        "Leonardo DiCaprio stars as Dom Cobb, a professional thief who steals information by infiltrating the subconscious.",
        "The score was composed by Hans Zimmer.",
    ],
    infobox=[("Running time", ["148 minutes"]), ("Distributed by", ["Warner Bros. Pictures"])],
    anchors=[
        ("Christopher Nolan", "Christopher Nolan"),
        ("Leonardo DiCaprio", "Leonardo DiCaprio"),
        ("Dom Cobb", "Dom Cobb"),
        ("Hans Zimmer", "Hans Zimmer"),
        ("Warner Bros.", "Warner Bros."),
    ],
)
page(
    "The Godfather",
    sentences=[
        "The Godfather is a 1972 American crime film directed by Francis Ford Coppola.",
        "It is based on Mario Puzo's best-selling novel of the same name.",
        "The film stars Marlon Brando as Vito Corleone and Al Pacino as Michael Corleone.",
        "It was followed by The Godfather Part II in 1974.",
    ],
    infobox=[("Running time", ["175 minutes"]), ("Box office", ["$250–291 million"])],
    anchors=[
        ("Francis Ford Coppola", "Francis Ford Coppola"),
        ("Mario Puzo", "Mario Puzo"),
        ("Marlon Brando", "Marlon Brando"),
        ("Vito Corleone", "Vito Corleone"),
        ("Al Pacino", "Al Pacino"),
        ("Michael Corleone", "Michael Corleone"),
        ("The Godfather Part II", "The Godfather Part II"),
    ],
)
page(
    "Thriller",
    sentences=[
        "Thriller is the sixth studio album by the American singer Michael Jackson, released on November 30, 1982, by Epic Records.",
        "It was produced by Quincy Jones.",
        "Seven singles were released, including Billie Jean and Beat It.",
    ],
    tables=[
        (
            "Track listing",
            ["No.", "Title", "Length"],
            [["1", "Wanna Be Startin' Somethin'", "6:03"], ["6", "Billie Jean", "4:54"]],
        )
    ],
    infobox=[("Length", ["42:19"]), ("Genre", ["Pop", "post-disco", "funk", "rock"])],
    anchors=[
        ("Michael Jackson", "Michael Jackson"),
        ("Epic Records", "Epic Records"),
        ("Quincy Jones", "Quincy Jones"),
        ("Billie Jean", "Billie Jean"),
        ("Pop", "pop music"),
    ],
)
page(
    "Abbey Road",
    sentences=[
        "Abbey Road is the eleventh studio album by the English rock band the Beatles, released on 26 September 1969 by Apple Records.",
        "It was recorded at Abbey Road Studios in London and produced by George Martin.",
        "The Beatles, often called the Fab Four, were formed in Liverpool in 1960.",
    ],
    infobox=[("Length", ["47:03"]), ("Producer", ["George Martin"])],
    anchors=[
        ("the Beatles", "The Beatles"),
        ("The Beatles", "The Beatles"),
        ("Apple Records", "Apple Records"),
        ("Abbey Road Studios", "Abbey Road Studios"),
        ("London", "London"),
        ("George Martin", "George Martin"),
        ("Liverpool", "Liverpool"),
    ],
)
page(
    "FC Barcelona",
    sentences=[
        "Futbol Club Barcelona is a professional football club based in Barcelona, Catalonia, Spain, that competes in La Liga.",
        "Founded in 1899 by a group of Swiss, Catalan, German, and English footballers led by Joan Gamper, the club has become a symbol of Catalan culture.",
        "The club's home stadium since 1957 has been Camp Nou.",
    ],
    tables=[
        (
            "Honours",
            ["Competition", "Titles"],
            [["La Liga", "27"], ["Copa del Rey", "31"]],
        )
    ],
    infobox=[("Founded", ["29 November 1899"]), ("Ground", ["Camp Nou"]), ("Capacity", ["99,354"])],
    anchors=[
        ("Barcelona", "Barcelona"),
        ("La Liga", "La Liga"),
        ("Joan Gamper", "Joan Gamper"),
        ("Camp Nou", "Camp Nou"),
    ],
)
page(
    "Lionel Messi",
    sentences=[
        "Lionel Andrés Messi (born 24 June 1987) is an Argentine professional footballer.",
        "Born and raised in central Argentina, Messi relocated to Spain at the age of 13 to join FC Barcelona.",
        "In 2021 he signed for Paris Saint-Germain.",
    ],
    tables=[
        (
            "Club career",
            ["Club", "Season", "Goals"],
            [["FC Barcelona", "2004–2021", "672"], ["Paris Saint-Germain", "2021–2023", "32"]],
        )
    ],
    infobox=[("Place of birth", ["Rosario, Argentina"]), ("Position", ["Forward"])],
    anchors=[
        ("Argentina", "Argentina national football team"),
        ("FC Barcelona", "FC Barcelona"),
        ("Paris Saint-Germain", "Paris Saint-Germain"),
        ("Rosario", "Rosario"),
    ],
)
page(
    "2014 FIFA World Cup",
    sentences=[
        "The 2014 FIFA World Cup was the 20th FIFA World Cup, held in Brazil from 12 June to 13 July 2014.",
        "Germany won the tournament, defeating Argentina 1–0 in the final after extra time.",
        "The final was played at the Maracanã Stadium in Rio de Janeiro, where Mario Götze scored the winning goal.",
        "James Rodríguez was awarded the Golden Boot for scoring six goals.",
    ],
    tables=[
        (
            "Awards",
            ["Award", "Winner"],
            [["Golden Ball", "Lionel Messi"], ["Golden Boot", "James Rodríguez"]],
        )
    ],
    infobox=[("Host country", ["Brazil"]), ("Teams", ["32"]), ("Champions", ["Germany"])],
    anchors=[
        ("Brazil", "Brazil"),
        ("Germany", "Germany national football team"),
        ("Argentina", "Argentina national football team"),
        ("Maracanã Stadium", "Maracanã Stadium"),
        ("Rio de Janeiro", "Rio de Janeiro"),
        ("Mario Götze", "Mario Götze"),
        ("James Rodríguez", "James Rodríguez"),
        ("Lionel Messi", "Lionel Messi"),
    ],
)

links = {e["label"]: e["id"] for e in entities}

# --------------------------------------------------------------- benchmark


def A(label):
    """Gold answer: entity if the label is a fixture entity, else literal."""
    if label in by_label:
        return {"label": label, "wikidata_url": WD + E(label)}
    return {"label": label}


def T(question, answers, sources, completed=None):
    answers = answers if isinstance(answers, list) else [answers]
    rec = {"question": question, "answers": [A(a) for a in answers], "sources": sources}
    if completed:
        rec["completed"] = completed
    return rec


CONVS = [
    ("c01", "TV series", [
        T("Who played Jaime Lannister in GoT?", "Nikolaj Coster-Waldau", ["kb"]),
        T("What about the dwarf?", "Peter Dinklage", ["kb", "text"], "Who played the dwarf in Game of Thrones?"),
        T("When was he born?", "11 June 1969", ["kb", "text"], "When was Peter Dinklage born?"),
        T("Where was he born?", "Morristown", ["kb", "text"], "Where was Peter Dinklage born?"),
        T("Duration of an episode of GoT?", "50–82 minutes", ["info"]),
    ]),
    ("c02", "TV series", [
        T("Who created Game of Thrones?", ["David Benioff", "D. B. Weiss"], ["kb", "text", "info"]),
        T("Which network aired it?", "HBO", ["kb", "text", "info"], "Which network aired Game of Thrones?"),
        T("When did the first season premiere?", "17 April 2011", ["text", "table"], "When did the first season of Game of Thrones premiere?"),
        T("Which book series is it based on?", "A Song of Ice and Fire", ["kb", "text"]),
        T("Who wrote the books?", "George R. R. Martin", ["kb", "text"], "Who wrote A Song of Ice and Fire?"),
    ]),
    ("c03", "TV series", [
        T("Who created Breaking Bad?", "Vince Gilligan", ["kb", "text"]),
        T("Who played Heisenberg?", "Bryan Cranston", ["kb"], "Who played Heisenberg in Breaking Bad?"),
        T("When was he born?", "7 March 1956", ["kb"], "When was Bryan Cranston born?"),
        T("Which network aired the show?", "AMC", ["kb", "text", "info"]),
        T("In which city is it set?", "Albuquerque", ["kb", "text"]),
    ]),
    ("c04", "TV series", [
        T("Which city is Breaking Bad set in?", "Albuquerque", ["kb", "text"]),
        T("Who played Jesse Pinkman?", "Aaron Paul", ["kb"]),
        T("How many seasons were made?", "5", ["kb", "table"]),
        T("When did it premiere?", "20 January 2008", ["kb", "text", "table"]),
        T("Which award did Bryan Cranston win for the show?", "Primetime Emmy Award for Outstanding Lead Actor in a Drama Series", ["kb"]),
    ]),
    ("c05", "Books", [
        T("Who wrote The Hobbit?", "J. R. R. Tolkien", ["kb", "text"]),
        T("When was it published?", "21 September 1937", ["kb"]),
        T("Who was the publisher?", "George Allen & Unwin", ["kb"]),
        T("Where was the author born?", "Bloemfontein", ["kb"], "Where was J. R. R. Tolkien born?"),
        T("What is the sequel?", "The Lord of the Rings", ["kb", "info"]),
    ]),
    ("c06", "Books", [
        T("Which dragon appears in The Hobbit?", "Smaug", ["kb", "text"]),
        T("Who is the main character?", "Bilbo Baggins", ["kb", "text"]),
        T("Which wizard recruits him?", "Gandalf", ["kb", "text"]),
        T("What genre is the book?", "high fantasy", ["kb"]),
        T("Who illustrated the first edition?", "J. R. R. Tolkien", ["kb", "info"]),
    ]),
    ("c07", "Books", [
        T("Who wrote Pride and Prejudice?", "Jane Austen", ["kb", "text"]),
        T("When was it published?", "28 January 1813", ["kb", "info"]),
        T("Who published it?", "Thomas Egerton", ["kb", "info"]),
        T("Where was the author born?", "Steventon", ["kb"], "Where was Jane Austen born?"),
        T("When did she die?", "18 July 1817", ["kb"], "When did Jane Austen die?"),
    ]),
    ("c08", "Books", [
        T("Who is the protagonist of Pride and Prejudice?", "Elizabeth Bennet", ["kb", "text"]),
        T("Whom does she marry?", "Fitzwilliam Darcy", ["kb", "text"], "Whom does Elizabeth Bennet marry?"),
        T("Who played him in the 2005 film?", "Matthew Macfadyen", ["kb"], "Who played Fitzwilliam Darcy in the 2005 film?"),
        T("In which county is the novel set?", "Hertfordshire", ["kb"]),
        T("Who wrote the novel?", "Jane Austen", ["kb", "text"], "Who wrote Pride and Prejudice?"),
    ]),
    ("c09", "Movies", [
        T("Who directed Inception?", "Christopher Nolan", ["kb", "text"]),
        T("Who composed the score?", "Hans Zimmer", ["kb", "text"]),
        T("Who played Cobb?", "Leonardo DiCaprio", ["kb", "text"]),
        T("When was the film released?", "16 July 2010", ["kb"]),
        T("Which company distributed it?", "Warner Bros.", ["kb", "info"]),
    ]),
    ("c10", "Movies", [
        T("How long is Inception?", "148 minutes", ["info"]),
        T("Who directed it?", "Christopher Nolan", ["kb", "text"]),
        T("When was he born?", "30 July 1970", ["kb"], "When was Christopher Nolan born?"),
        T("Where was he born?", "London", ["kb"], "Where was Christopher Nolan born?"),
        T("Which film did he release in 2008?", "The Dark Knight", ["kb"], "Which film did Christopher Nolan release in 2008?"),
    ]),
    ("c11", "Movies", [
        T("Who directed The Godfather?", "Francis Ford Coppola", ["kb", "text"]),
        T("Who played Vito Corleone?", "Marlon Brando", ["kb", "text"]),
        T("Where was he born?", "Omaha", ["kb"], "Where was Marlon Brando born?"),
        T("When was the film released?", "24 March 1972", ["kb"]),
        T("What is the sequel called?", "The Godfather Part II", ["kb", "text"]),
    ]),
    ("c12", "Movies", [
        T("Who wrote the novel The Godfather is based on?", "Mario Puzo", ["kb", "text"]),
        T("Which award did the film win?", "Academy Award for Best Picture", ["kb"]),
        T("Who played Michael Corleone?", "Al Pacino", ["kb", "text"]),
        T("What is the sequel?", "The Godfather Part II", ["kb", "text"]),
        T("When was the sequel released?", "20 December 1974", ["kb"], "When was The Godfather Part II released?"),
    ]),
    ("c13", "Music", [
        T("Who recorded the album Thriller?", "Michael Jackson", ["kb", "text"]),
        T("Who produced it?", "Quincy Jones", ["kb", "text"]),
        T("When was it released?", "30 November 1982", ["kb", "text"]),
        T("Which record label released it?", "Epic Records", ["kb", "text"]),
        T("Where was the singer born?", "Gary", ["kb"], "Where was Michael Jackson born?"),
    ]),
    ("c14", "Music", [
        T("Which album features Billie Jean?", "Thriller", ["kb"]),
        T("Who sang it?", "Michael Jackson", ["kb"]),
        T("When was he born?", "29 August 1958", ["kb"], "When was Michael Jackson born?"),
        T("Who produced the album?", "Quincy Jones", ["kb", "text"], "Who produced Thriller?"),
        T("What genre is the album?", "pop music", ["kb", "info"], "What genre is Thriller?"),
    ]),
    ("c15", "Music", [
        T("Which band recorded Abbey Road?", "The Beatles", ["kb", "text"]),
        T("When was it released?", "26 September 1969", ["kb", "text"]),
        T("Who produced it?", "George Martin", ["kb", "text", "info"]),
        T("Which city is the band from?", "Liverpool", ["kb", "text"], "Which city are the Beatles from?"),
        T("What is their nickname?", "Fab Four", ["text"], "What is the nickname of the Beatles?"),
    ]),
    ("c16", "Music", [
        T("Who was the drummer of the Beatles?", "Ringo Starr", ["kb"]),
        T("When was he born?", "7 July 1940", ["kb"], "When was Ringo Starr born?"),
        T("Which label released Abbey Road?", "Apple Records", ["kb", "text"]),
        T("Where was the album recorded?", "Abbey Road Studios", ["kb", "text"]),
        T("In which city is the studio?", "London", ["kb", "text"], "In which city is Abbey Road Studios?"),
    ]),
    ("c17", "Soccer", [
        T("Which stadium does FC Barcelona play in?", "Camp Nou", ["kb", "text", "info"]),
        T("When was the club founded?", "29 November 1899", ["kb", "info"]),
        T("Who founded it?", "Joan Gamper", ["kb", "text"]),
        T("Which league does it play in?", "La Liga", ["kb", "text", "table"]),
        T("Where was the founder born?", "Winterthur", ["kb"], "Where was Joan Gamper born?"),
    ]),
    ("c18", "Soccer", [
        T("Which club did Lionel Messi join as a teenager?", "FC Barcelona", ["kb", "text"]),
        T("Where was he born?", "Rosario", ["kb", "info"]),
        T("When was he born?", "24 June 1987", ["kb", "text"]),
        T("Which national team does he play for?", "Argentina national football team", ["kb"]),
        T("Which club did he join in 2021?", "Paris Saint-Germain", ["kb", "text"]),
    ]),
    ("c19", "Soccer", [
        T("Which country hosted the 2014 FIFA World Cup?", "Brazil", ["kb", "text", "info"]),
        T("Who won the tournament?", "Germany national football team", ["kb", "text"]),
        T("Who did they beat in the final?", "Argentina national football team", ["kb", "text"]),
        T("Where was the final played?", "Maracanã Stadium", ["text"]),
        T("Who scored the winning goal?", "Mario Götze", ["text"]),
    ]),
    ("c20", "Soccer", [
        T("Who was the top scorer of the 2014 World Cup?", "James Rodríguez", ["kb", "text", "table"]),
        T("Which national team does he play for?", "Colombia national football team", ["kb"]),
        T("When did the tournament begin?", "12 June 2014", ["kb"]),
        T("How many teams took part?", "32", ["info"]),
        T("Which city hosted the final?", "Rio de Janeiro", ["text"]),
    ]),
]

benchmark = [{"conv_id": cid, "domain": dom, "turns": turns} for cid, dom, turns in CONVS]


def dump(name, value):
    (OUT / name).write_text(json.dumps(value, ensure_ascii=False, indent=2) + "\n", encoding="utf-8")


if __name__ == "__main__":
    OUT.mkdir(exist_ok=True)
    dump("entities.json", entities)
    dump("facts.json", facts)
    dump("pages.json", pages)
    dump("links.json", links)
    dump("benchmark.json", benchmark)
    print(f"{len(entities)} entities, {len(facts)} facts, {len(pages)} pages, {len(benchmark)} conversations")

"""Word lists backing the rule-based tagger and lemmatizer."""

# be/have/do forms plus common review verbs (surface form -> lemma)
VERB_LEMMAS = {
    "is": "be", "are": "be", "was": "be", "were": "be", "am": "be",
    "be": "be", "been": "be", "being": "be",
    "has": "have", "have": "have", "had": "have", "having": "have",
    "does": "do", "do": "do", "did": "do", "doing": "do",
    "went": "go", "go": "go", "goes": "go", "gone": "go", "going": "go",
    "ordered": "order", "order": "order", "orders": "order",
    "tried": "try", "try": "try", "tries": "try",
    "loved": "love", "love": "love", "loves": "love",
    "liked": "like", "like": "like", "likes": "like",
    "hated": "hate", "hate": "hate", "hates": "hate",
    "enjoyed": "enjoy", "enjoy": "enjoy", "enjoys": "enjoy",
    "visited": "visit", "visit": "visit", "visits": "visit",
    "recommended": "recommend", "recommend": "recommend",
    "recommends": "recommend",
    "shared": "share", "share": "share", "shares": "share",
    "tasted": "taste", "taste": "taste", "tastes": "taste",
    "sampled": "sample", "sample": "sample",
    "finished": "finish", "finish": "finish",
    "grabbed": "grab", "grab": "grab",
    "picked": "pick", "pick": "pick",
    "chose": "choose", "choose": "choose", "chosen": "choose",
    "booked": "book", "book": "book", "books": "book",
    "attended": "attend", "attend": "attend",
    "hosted": "host", "host": "host",
    "joined": "join", "join": "join",
    "planned": "plan", "plan": "plan",
    "celebrated": "celebrate", "celebrate": "celebrate",
    "remembered": "remember", "remember": "remember",
    "described": "describe", "describe": "describe",
    "mentioned": "mention", "mention": "mention",
    "praised": "praise", "praise": "praise",
    "waited": "wait", "wait": "wait", "waits": "wait",
    "arrived": "arrive", "arrive": "arrive",
    "served": "serve", "serve": "serve", "serves": "serve",
    "came": "come", "come": "come", "comes": "come",
    "took": "take", "take": "take", "takes": "take", "taken": "take",
    "got": "get", "get": "get", "gets": "get",
    "made": "make", "make": "make", "makes": "make",
    "said": "say", "say": "say", "says": "say",
    "seemed": "seem", "seem": "seem", "seems": "seem",
    "looked": "look", "look": "look", "looks": "look",
    "felt": "feel", "feel": "feel", "feels": "feel",
    "returned": "return", "return": "return",
    "stopped": "stop", "stop": "stop",
    "asked": "ask", "ask": "ask",
    "told": "tell", "tell": "tell",
    "brought": "bring", "bring": "bring",
    "charged": "charge", "charge": "charge",
    "paid": "pay", "pay": "pay", "pays": "pay",
    "lasted": "last", "lasts": "last",
    "runs": "run", "ran": "run", "run": "run",
    "broke": "break", "broken": "break", "break": "break",
    "worked": "work", "work": "work", "works": "work",
}

ADJECTIVES = frozenset("""
amazing astonishing awesome breathtaking brilliant delightful divine
exceptional excellent exquisite extraordinary fabulous fantastic flawless
glorious heavenly incredible magnificent marvelous outstanding perfect
phenomenal remarkable spectacular stellar stunning sublime superb terrific
unbeatable wonderful attentive authentic cheerful charming comfortable cozy
creamy crisp crispy delicious enjoyable fast flavorful fresh friendly
generous good great happy healthy hearty helpful juicy lovely nice pleasant
polite prompt quick reasonable refreshing relaxing reliable rich satisfying
savory smooth solid spacious sweet tasty tender warm welcoming adequate
average decent fair fine moderate normal okay ordinary passable plain
standard typical usual bad bland boring chewy cold cramped crowded dim
dirty disappointing dry expensive forgettable greasy lacking limited loud
lukewarm mediocre messy noisy oily overcooked overpriced pricey rude salty
slow small soggy stale stingy subpar tasteless tired tough uncomfortable
underwhelming unfriendly unhelpful weak poor abysmal appalling atrocious
awful disgusting dreadful filthy gross horrendous horrible horrid inedible
insulting nasty nauseating offensive rancid repulsive revolting rotten
terrible unacceptable unbearable vile worst wretched asian italian french
mexican japanese chinese thai indian greek spanish huge big large tiny
little long short high low new old young hot spicy mild sour bitter salted
grilled fried baked roasted steamed fresh frozen empty full busy quiet
cheap free open closed early late wrong right whole half extra main local
favorite special regular pretty easy hard difficult simple bright sharp
strong sturdy light heavy thin thick durable portable powerful silent
clean elegant modern romantic intimate lively
""".split())

ADVERBS = frozenset("""
very really extremely incredibly absolutely super truly so slightly
somewhat fairly rather quite too also just always never usually often
sometimes here there again soon already still yet almost nearly barely
kinda mildly moderately seriously totally utterly highly remarkably
ridiculously unbelievably genuinely exceptionally terribly completely
insanely partly reasonably vaguely marginally sorta
""".split())

# determiners, pronouns, prepositions, conjunctions and other closed-class
# words tagged OTHER
CLOSED_CLASS = frozenset("""
the a an this that these those my your his her its our their some any no
every each either neither i you he she it we they me him us them mine yours
hers ours theirs myself yourself himself herself itself ourselves
themselves who whom whose which what of in on at to for with from by about
as into like through after over between out against during without before
under around among up down off above below near and but or nor so yet both
not only than then once if because while when where how why all more most
other such own same
""".split())

DETERMINERS = frozenset(
    "the a an this that these those my your his her its our their".split()
)
POSSESSIVES = frozenset("my your his her its our their".split())
COORDINATORS = frozenset("and but or".split())
PREPOSITIONS = frozenset(
    "of in on at to for with from by about into through after over between "
    "against during without before under around among near".split()
)

BE_FORMS = frozenset("is are was were am be been being".split())

IRREGULAR_NOUNS = {
    "children": "child", "men": "man", "women": "woman", "people": "person",
    "feet": "foot", "teeth": "tooth", "mice": "mouse", "wives": "wife",
    "knives": "knife", "lives": "life", "fries": "fry", "leaves": "leaf",
}

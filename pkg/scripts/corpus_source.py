"""Source text for the shipped toy corpus (data/corpus.jsonl)."""

DOCS = {
    "cooking": [
        "Cook the pizza in a hot oven for fifteen minutes. Let the cheese melt, then slice the pizza and serve it warm.",
        "Boil the water in a large pot and add the pasta. Drain the pasta when it is soft and toss it with butter and cheese.",
        "Ice cold water keeps the vegetables crisp. Steam the vegetables for a few minutes and season them with salt.",
        "Bake the bread in the oven until the crust is golden. Let the bread cool before you slice it.",
        "Fry the onions in butter until they are soft and sweet. Add the garlic and cook the sauce slowly.",
        "The soup needs fresh vegetables, salt and pepper. Simmer the soup in a pot and serve it with warm bread.",
        "Steam rises from the pot as the water boils. Add the rice and cover the pot until the rice is tender.",
        "Grill the chicken over a hot fire and brush it with sauce. Serve the chicken with rice and fresh vegetables.",
        "Whisk the eggs with sugar and butter, then bake the cake in the oven. Let the cake cool on the table.",
        "Put ice in the glass and pour cold water over it. Fresh fruit and mint make the drink sweet.",
        "Roast the meat in the oven with garlic and pepper. Slice the meat and serve it with a rich sauce.",
        "The chef seasons the fish with salt and lemon and cooks it in a hot pan. Serve the fish with steamed vegetables.",
        "Melt the chocolate with butter and sugar. Pour the sauce over the cake and serve it with fruit.",
        "Chop the vegetables and fry them quickly in a hot pan with oil, garlic and sauce.",
    ],
    "sports": [
        "The team won the game in the final minute. The crowd cheered as the ball hit the net.",
        "The coach trained the players hard before the match. The team scored two goals in the second half.",
        "The runner finished the race in record time. The athletes trained for months before the championship.",
        "The player kicked the ball past the goalkeeper and the crowd roared. The match ended with a late goal.",
        "The tennis player served fast and won the set. The champion lifted the trophy after the final.",
        "The league season starts in spring. Every team plays the other teams twice before the playoffs.",
        "The captain led the team onto the field. The players warmed up and the referee blew the whistle.",
        "The swimmer won the gold medal in the pool. The coach praised the athlete after the race.",
        "Fans filled the stadium to watch the game. The home team scored early and held the lead.",
        "The boxer trained every morning and won the fight in the final round. The crowd cheered the champion.",
        "The basketball player scored the winning basket. The team celebrated the victory with the fans.",
        "The referee gave the player a red card and the team played the match with ten men.",
        "The cyclist won the race after a long climb. The team car followed the riders through the mountains.",
        "The goalkeeper saved the penalty and the team won the championship trophy.",
    ],
    "politics": [
        "The government passed a new law on taxes. The minister defended the budget in parliament.",
        "Voters went to the polls in the election. The party won a majority of the seats in parliament.",
        "The president signed the treaty after long talks. The senate must approve the treaty before it becomes law.",
        "The minister announced a new policy on health care. The opposition party criticized the plan.",
        "The candidate spoke to voters about jobs and taxes. The campaign ended with a large rally.",
        "The parliament debated the budget for weeks. The vote on the law was close.",
        "The senator proposed a bill to reform the courts. The committee will vote on the bill next week.",
        "The election results showed a swing to the opposition. The party leader conceded defeat.",
        "The government and the unions reached a deal on wages. The minister praised the agreement.",
        "The president met foreign leaders to discuss trade and security. The talks ended with a joint statement.",
        "The council voted to raise local taxes. The mayor said the budget needed more money for schools.",
        "Protesters marched to parliament to demand reform. The government promised a new law on voting rights.",
        "The court ruled that the law was unconstitutional. The government will appeal the decision.",
        "The party chose a new leader before the election. The leader promised lower taxes and more jobs.",
    ],
}
